//! Complete deterministic finite automata, word actions on states and
//! subsets, and the defect/excluded/duplicate machinery.
//!
//! States are dense integers `0..n`. Subsets carry a canonical ascending
//! order, so subset equality and hashing are structural and subsets can be
//! used directly as graph vertex keys.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a state inside a DFA transition table.
pub type StateId = usize;

/// Index of a letter in a DFA's alphabet.
pub type LetterId = usize;

/// Hard upper bound on the state count, imposed by the bitmask subset
/// encoding. Every algorithmic guard in this crate sits far below it.
pub const MAX_STATES: usize = 64;

/// A set of states over the universe `0..n`, encoded as a 64-bit mask.
///
/// Ordering and iteration follow the ascending element sequence, so sets
/// compare lexicographically by their sorted contents ({0,5} < {1,2}, and
/// {1,2} < {1,2,3}).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StateSet {
    bits: u64,
}

impl StateSet {
    pub const EMPTY: StateSet = StateSet { bits: 0 };

    /// The full universe {0, …, n−1}.
    pub fn full(n: usize) -> StateSet {
        debug_assert!(n <= MAX_STATES);
        if n == 64 {
            StateSet { bits: u64::MAX }
        } else {
            StateSet {
                bits: (1u64 << n) - 1,
            }
        }
    }

    pub fn singleton(q: StateId) -> StateSet {
        debug_assert!(q < MAX_STATES);
        StateSet { bits: 1u64 << q }
    }

    /// Reconstructs a set from its raw mask; inverse of [`StateSet::bits`].
    pub fn from_bits(bits: u64) -> StateSet {
        StateSet { bits }
    }

    /// The raw mask. Bit `q` is set iff state `q` is a member.
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn insert(&mut self, q: StateId) {
        debug_assert!(q < MAX_STATES);
        self.bits |= 1u64 << q;
    }

    pub fn remove(&mut self, q: StateId) {
        debug_assert!(q < MAX_STATES);
        self.bits &= !(1u64 << q);
    }

    pub fn contains(self, q: StateId) -> bool {
        q < MAX_STATES && self.bits >> q & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn union(self, other: StateSet) -> StateSet {
        StateSet {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: StateSet) -> StateSet {
        StateSet {
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: StateSet) -> StateSet {
        StateSet {
            bits: self.bits & !other.bits,
        }
    }

    /// Complement within the universe {0, …, n−1}.
    pub fn complement_within(self, n: usize) -> StateSet {
        StateSet::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: StateSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_proper_subset_of(self, other: StateSet) -> bool {
        self.is_subset_of(other) && self.bits != other.bits
    }

    pub fn is_disjoint(self, other: StateSet) -> bool {
        self.bits & other.bits == 0
    }

    /// The smallest member, if any.
    pub fn first(self) -> Option<StateId> {
        if self.bits == 0 {
            None
        } else {
            Some(self.bits.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> StateSetIter {
        StateSetIter { bits: self.bits }
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for q in iter {
            set.insert(q);
        }
        set
    }
}

impl IntoIterator for StateSet {
    type Item = StateId;
    type IntoIter = StateSetIter;

    fn into_iter(self) -> StateSetIter {
        self.iter()
    }
}

pub struct StateSetIter {
    bits: u64,
}

impl Iterator for StateSetIter {
    type Item = StateId;

    fn next(&mut self) -> Option<StateId> {
        if self.bits == 0 {
            None
        } else {
            let q = self.bits.trailing_zeros() as usize;
            self.bits &= self.bits - 1;
            Some(q)
        }
    }
}

impl Ord for StateSet {
    /// Lexicographic comparison of the ascending element sequences.
    fn cmp(&self, other: &StateSet) -> Ordering {
        let diff = self.bits ^ other.bits;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The sequences agree below the lowest differing element.
        let lowest = diff.trailing_zeros();
        let above = if lowest >= 63 {
            0
        } else {
            u64::MAX << (lowest + 1)
        };
        if self.bits >> lowest & 1 == 1 {
            // `self` holds the smaller next element unless `other` is a
            // proper prefix (no members above the divergence point).
            if other.bits & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.bits & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &StateSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite sequence of letter indices, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<LetterId>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(letter: LetterId) -> Word {
        Word(vec![letter])
    }

    pub fn from_letters(letters: impl Into<Vec<LetterId>>) -> Word {
        Word(letters.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[LetterId] {
        &self.0
    }

    pub fn push(&mut self, letter: LetterId) {
        self.0.push(letter);
    }

    /// A copy of this word with one letter appended.
    pub fn appended(&self, letter: LetterId) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        Word(letters)
    }

    /// Concatenation `self · other` in application order.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            for (i, l) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, "·")?;
                }
                write!(f, "{l}")?;
            }
            Ok(())
        }
    }
}

/// A complete deterministic finite automaton: `n` states, `m` named
/// letters, and a total transition table.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    state_count: usize,
    letters: Vec<String>,
    /// `delta[letter][state]` is the target of `state` under `letter`.
    delta: Vec<Vec<StateId>>,
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfa")
            .field("state_count", &self.state_count)
            .field("letters", &self.letters)
            .field("delta", &self.delta)
            .finish()
    }
}

impl Dfa {
    /// Builds an automaton after checking every table invariant: `n ≥ 1`,
    /// a non-empty alphabet of pairwise distinct letter names, and a total
    /// `m × n` table whose entries all lie in `[0, n)`.
    pub fn new(state_count: usize, letters: Vec<String>, delta: Vec<Vec<StateId>>) -> Result<Dfa> {
        if state_count == 0 {
            return Err(Error::InvalidAutomaton(
                "state count must be at least 1".into(),
            ));
        }
        if state_count > MAX_STATES {
            return Err(Error::InvalidAutomaton(format!(
                "state count {state_count} exceeds the supported maximum {MAX_STATES}"
            )));
        }
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet must not be empty".into()));
        }
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate letter name {a:?}"
                )));
            }
        }
        if delta.len() != letters.len() {
            return Err(Error::InvalidAutomaton(format!(
                "transition table has {} rows but the alphabet has {} letters",
                delta.len(),
                letters.len()
            )));
        }
        for (row, name) in delta.iter().zip(&letters) {
            if row.len() != state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "row for letter {name:?} has {} entries, expected {state_count}",
                    row.len()
                )));
            }
            for (q, &target) in row.iter().enumerate() {
                if target >= state_count {
                    return Err(Error::InvalidAutomaton(format!(
                        "target {target} of state {q} under letter {name:?} is out of range"
                    )));
                }
            }
        }
        Ok(Dfa {
            state_count,
            letters,
            delta,
        })
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn letter_names(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_name(&self, letter: LetterId) -> &str {
        &self.letters[letter]
    }

    pub fn letter_index(&self, name: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l == name)
    }

    /// One row of the transition table: the action of `letter` on each state.
    pub fn letter_action(&self, letter: LetterId) -> &[StateId] {
        &self.delta[letter]
    }

    /// The full state set Q = {0, …, n−1}.
    pub fn all_states(&self) -> StateSet {
        StateSet::full(self.state_count)
    }

    /// `q · a` for a single letter.
    pub fn target(&self, q: StateId, letter: LetterId) -> StateId {
        self.delta[letter][q]
    }

    /// `q · w`: the word action on a single state.
    pub fn step_state(&self, q: StateId, word: &Word) -> StateId {
        word.letters().iter().fold(q, |s, &a| self.delta[a][s])
    }

    /// The transformation induced by `word`, as the vector `q ↦ q·w`.
    pub fn transformation(&self, word: &Word) -> Vec<StateId> {
        (0..self.state_count)
            .map(|q| self.step_state(q, word))
            .collect()
    }

    /// `P · w = {q·w | q ∈ P}`. The empty word returns `set` unchanged.
    pub fn image(&self, set: StateSet, word: &Word) -> StateSet {
        set.iter().map(|q| self.step_state(q, word)).collect()
    }

    /// `P · a` for a single letter.
    pub fn image_letter(&self, set: StateSet, letter: LetterId) -> StateSet {
        set.iter().map(|q| self.delta[letter][q]).collect()
    }

    /// The defect of `word`: `n − |Q·w|`.
    pub fn defect(&self, word: &Word) -> usize {
        self.state_count - self.image(self.all_states(), word).len()
    }

    /// The excluded set `excl(w) = Q \ Q·w`.
    pub fn excl(&self, word: &Word) -> StateSet {
        self.image(self.all_states(), word)
            .complement_within(self.state_count)
    }

    /// The duplicate set `dupl(w)`: states with at least two preimages in Q
    /// under `word`.
    pub fn dupl(&self, word: &Word) -> StateSet {
        let mut seen = StateSet::EMPTY;
        let mut dup = StateSet::EMPTY;
        for q in 0..self.state_count {
            let p = self.step_state(q, word);
            if seen.contains(p) {
                dup.insert(p);
            } else {
                seen.insert(p);
            }
        }
        dup
    }

    /// The full preimage `{q ∈ Q | q·w ∈ set}`.
    pub fn preimage(&self, word: &Word, set: StateSet) -> StateSet {
        (0..self.state_count)
            .filter(|&q| set.contains(self.step_state(q, word)))
            .collect()
    }
}
