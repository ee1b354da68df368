//! Brute-force ground truth: breadth-first search over the power automaton
//! from Q. Used to validate verdicts, witnesses, and failure sets at desk
//! scale.

use std::collections::HashMap;

use crate::dfa::{Dfa, LetterId, StateSet, Word};
use crate::error::{Error, Result};

/// Guard on the state count; the subset frontier grows as 2^n.
pub const ORACLE_STATE_LIMIT: usize = 20;

/// How a reachable subset was first produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub parent: StateSet,
    pub letter: LetterId,
}

/// The family of subsets reachable from Q, with parent pointers giving a
/// shortest word per subset.
#[derive(Clone, Debug)]
pub struct ReachabilityTable {
    entries: HashMap<StateSet, Option<Derivation>>,
    /// Discovery order; Q first.
    order: Vec<StateSet>,
}

impl ReachabilityTable {
    pub fn reachable_count(&self) -> usize {
        self.entries.len()
    }

    pub fn is_reachable(&self, set: StateSet) -> bool {
        self.entries.contains_key(&set)
    }

    /// Subsets in BFS discovery order (letter order, FIFO), starting at Q.
    pub fn reachable_sets(&self) -> &[StateSet] {
        &self.order
    }

    pub fn derivation(&self, set: StateSet) -> Option<Derivation> {
        self.entries.get(&set).copied().flatten()
    }

    /// A shortest word carrying Q onto `target`, or `None` if unreachable.
    pub fn shortest_word_to(&self, target: StateSet) -> Option<Word> {
        if !self.entries.contains_key(&target) {
            return None;
        }
        let mut letters = Vec::new();
        let mut current = target;
        while let Some(d) = self.entries[&current] {
            letters.push(d.letter);
            current = d.parent;
        }
        letters.reverse();
        Some(Word::from_letters(letters))
    }
}

/// BFS closure of {Q} under all letter images; parent pointers give
/// shortest words. Guarded to [`ORACLE_STATE_LIMIT`] states.
pub fn reachable_family(dfa: &Dfa) -> Result<ReachabilityTable> {
    let n = dfa.state_count();
    if n > ORACLE_STATE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "the power-automaton oracle is guarded to {ORACLE_STATE_LIMIT} states, got {n}"
        )));
    }
    let full = dfa.all_states();
    let mut entries: HashMap<StateSet, Option<Derivation>> = HashMap::new();
    let mut order = vec![full];
    entries.insert(full, None);
    let mut head = 0;
    while head < order.len() {
        let subset = order[head];
        head += 1;
        for letter in 0..dfa.letter_count() {
            let image = dfa.image_letter(subset, letter);
            entries.entry(image).or_insert_with(|| {
                order.push(image);
                Some(Derivation {
                    parent: subset,
                    letter,
                })
            });
        }
    }
    Ok(ReachabilityTable { entries, order })
}

/// True iff all 2^n − 1 non-empty subsets are reachable from Q.
pub fn is_completely_reachable(dfa: &Dfa) -> Result<bool> {
    let table = reachable_family(dfa)?;
    let n = dfa.state_count();
    Ok(table.reachable_count() == (1usize << n) - 1)
}

/// Convenience wrapper: runs the BFS and extracts one shortest word.
pub fn shortest_word_to(dfa: &Dfa, target: StateSet) -> Result<Option<Word>> {
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    Ok(reachable_family(dfa)?.shortest_word_to(target))
}
