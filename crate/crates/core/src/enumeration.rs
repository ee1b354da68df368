//! Exact enumeration, per defect level, of all realizable (excl, dupl)
//! signatures of words, via a finite count-vector abstraction.
//!
//! The set of words of defect `k` is infinite, but only a word's per-state
//! preimage multiplicities — and only up to the threshold "two or more" —
//! matter for its excluded and duplicate sets. Multiplicities only add under
//! composition, so capping them at two is a congruence: stepping an abstract
//! vector by a letter agrees exactly with abstracting the extended word.
//! A breadth-first fixpoint over these vectors therefore enumerates exactly
//! the realizable signatures of every defect level, with one witness word
//! per signature.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::dfa::{Dfa, LetterId, StateId, StateSet, Word};
use crate::error::{Error, Result};

/// Default bound on the state count accepted by the enumeration (the vector
/// space grows as 3^n).
pub const DEFAULT_STATE_LIMIT: usize = 16;

/// Multiplicity class of one state under a word's transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultClass {
    /// No preimage: the state is excluded from the image.
    Zero,
    /// Exactly one preimage.
    One,
    /// Two or more preimages: the state is a duplicate.
    TwoPlus,
}

/// Per-state preimage-multiplicity classes in {0, 1, 2+}, stored as the pair
/// of its class-0 and class-2+ state sets (every other state has class 1).
///
/// This is an exact abstraction of a word's transformation for
/// excluded/duplicate purposes: the class-0 set is `excl(w)` and the
/// class-2+ set is `dupl(w)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CountVector {
    zero: StateSet,
    two: StateSet,
}

impl CountVector {
    /// The identity transformation: every state has exactly one preimage.
    pub fn identity() -> CountVector {
        CountVector {
            zero: StateSet::EMPTY,
            two: StateSet::EMPTY,
        }
    }

    pub fn from_parts(zero: StateSet, two: StateSet) -> CountVector {
        debug_assert!(zero.is_disjoint(two));
        CountVector { zero, two }
    }

    pub fn class(self, q: StateId) -> MultClass {
        if self.zero.contains(q) {
            MultClass::Zero
        } else if self.two.contains(q) {
            MultClass::TwoPlus
        } else {
            MultClass::One
        }
    }

    /// The defect: the number of class-0 states.
    pub fn defect(self) -> usize {
        self.zero.len()
    }

    /// Projection to the excluded set.
    pub fn excl(self) -> StateSet {
        self.zero
    }

    /// Projection to the duplicate set.
    pub fn dupl(self) -> StateSet {
        self.two
    }
}

/// Computes the count vector of `word` from its exact transformation.
///
/// This is the reference route for the abstraction; [`step`] is the
/// compositional route, and the two must agree on every word extension.
pub fn abstract_word(dfa: &Dfa, word: &Word) -> CountVector {
    let n = dfa.state_count();
    let mut counts = vec![0u8; n];
    for q in 0..n {
        let p = dfa.step_state(q, word);
        counts[p] = counts[p].saturating_add(1);
    }
    vector_from_counts(&counts)
}

/// Advances a count vector by one letter: the new class of `p` is the capped
/// sum of the classes of its preimages under the letter, with 2+ absorbing.
pub fn step(dfa: &Dfa, cv: CountVector, letter: LetterId) -> CountVector {
    let n = dfa.state_count();
    let action = dfa.letter_action(letter);
    let mut counts = vec![0u8; n];
    for (q, &p) in action.iter().enumerate() {
        let c = match cv.class(q) {
            MultClass::Zero => 0,
            MultClass::One => 1,
            MultClass::TwoPlus => 2,
        };
        if c > 0 {
            counts[p] = (counts[p] + c).min(2);
        }
    }
    vector_from_counts(&counts)
}

fn vector_from_counts(counts: &[u8]) -> CountVector {
    let mut zero = StateSet::EMPTY;
    let mut two = StateSet::EMPTY;
    for (p, &c) in counts.iter().enumerate() {
        if c == 0 {
            zero.insert(p);
        } else if c >= 2 {
            two.insert(p);
        }
    }
    CountVector { zero, two }
}

/// A realizable (excl, dupl) pair at some defect level, with a witness word
/// whose abstraction realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectSignature {
    pub excl: StateSet,
    pub dupl: StateSet,
    pub witness: Word,
}

/// Breadth-first index of every count vector reachable from the identity,
/// bucketed by defect, with the shortest-found witness word per vector.
///
/// The index is grown lazily: [`EnumerationIndex::enumerate_to`] completes
/// all buckets up to a defect cap and suspends deeper vectors on a frontier,
/// resumed when the cap rises. Witnesses stay valid across resumption but
/// are no longer globally shortest.
#[derive(Clone, Debug)]
pub struct EnumerationIndex {
    state_count: usize,
    letter_count: usize,
    limit: usize,
    witnesses: HashMap<CountVector, Word>,
    /// Discovery order per defect level; `buckets[d]` is complete once the
    /// cap has reached `d`.
    buckets: Vec<Vec<CountVector>>,
    /// Vectors discovered beyond the current cap, keyed by their defect.
    suspended: BTreeMap<usize, Vec<CountVector>>,
    completed: Option<usize>,
}

impl EnumerationIndex {
    /// A fresh index for `dfa` with the default state-count limit.
    pub fn new(dfa: &Dfa) -> EnumerationIndex {
        EnumerationIndex::with_limit(dfa, DEFAULT_STATE_LIMIT)
    }

    /// A fresh index with an explicit state-count limit override.
    pub fn with_limit(dfa: &Dfa, limit: usize) -> EnumerationIndex {
        EnumerationIndex {
            state_count: dfa.state_count(),
            letter_count: dfa.letter_count(),
            limit,
            witnesses: HashMap::new(),
            buckets: Vec::new(),
            suspended: BTreeMap::new(),
            completed: None,
        }
    }

    /// The highest defect cap completed so far, if any run has happened.
    pub fn completed_cap(&self) -> Option<usize> {
        self.completed
    }

    /// The witness stored for a vector, if the vector has been discovered.
    pub fn witness(&self, cv: &CountVector) -> Option<&Word> {
        self.witnesses.get(cv)
    }

    /// Completes every defect bucket up to `cap` by breadth-first fixpoint
    /// over count vectors, pruning (suspending) vectors whose defect
    /// exceeds `cap`. Pruning loses nothing: defect never decreases along a
    /// prefix, so no vector of defect ≤ cap is reachable through a deeper one.
    pub fn enumerate_to(&mut self, dfa: &Dfa, cap: usize) -> Result<()> {
        if dfa.state_count() != self.state_count || dfa.letter_count() != self.letter_count {
            return Err(Error::PreconditionViolated(
                "enumeration index was created for a different automaton".into(),
            ));
        }
        if self.state_count > self.limit {
            return Err(Error::ResourceLimit(format!(
                "state count {} exceeds the enumeration bound {}",
                self.state_count, self.limit
            )));
        }
        if self.completed.is_some_and(|done| cap <= done) {
            return Ok(());
        }
        if self.buckets.len() <= cap {
            self.buckets.resize_with(cap + 1, Vec::new);
        }

        let mut queue: VecDeque<CountVector> = VecDeque::new();
        if self.completed.is_none() {
            let identity = CountVector::identity();
            self.witnesses.insert(identity, Word::empty());
            self.buckets[0].push(identity);
            queue.push_back(identity);
        }
        // Resume suspended vectors that now fall under the cap, shallower
        // defects first, in discovery order within a defect.
        let resumable: Vec<usize> = self.suspended.range(..=cap).map(|(&d, _)| d).collect();
        for d in resumable {
            for cv in self.suspended.remove(&d).unwrap() {
                self.buckets[d].push(cv);
                queue.push_back(cv);
            }
        }

        while let Some(cv) = queue.pop_front() {
            let base = self.witnesses[&cv].clone();
            for letter in 0..self.letter_count {
                let next = step(dfa, cv, letter);
                if self.witnesses.contains_key(&next) {
                    continue;
                }
                self.witnesses.insert(next, base.appended(letter));
                let d = next.defect();
                if d <= cap {
                    self.buckets[d].push(next);
                    queue.push_back(next);
                } else {
                    self.suspended.entry(d).or_default().push(next);
                }
            }
        }
        self.completed = Some(cap);
        Ok(())
    }

    /// All realizable (excl, dupl) signatures of defect exactly `k`, in
    /// lexicographic order by excl then dupl, each with its witness word.
    pub fn pairs_at(&self, k: usize) -> Result<Vec<DefectSignature>> {
        if !self.completed.is_some_and(|done| done >= k) {
            return Err(Error::IndexIncomplete { needed: k });
        }
        let mut pairs: Vec<DefectSignature> = self
            .buckets
            .get(k)
            .map(Vec::as_slice)
            .unwrap_or(&[])
            .iter()
            .map(|cv| DefectSignature {
                excl: cv.excl(),
                dupl: cv.dupl(),
                witness: self.witnesses[cv].clone(),
            })
            .collect();
        pairs.sort_by_key(|s| (s.excl, s.dupl));
        Ok(pairs)
    }

    /// Count vectors of defect exactly `k`, in discovery order.
    pub fn vectors_at(&self, k: usize) -> Result<&[CountVector]> {
        if !self.completed.is_some_and(|done| done >= k) {
            return Err(Error::IndexIncomplete { needed: k });
        }
        Ok(self.buckets.get(k).map(Vec::as_slice).unwrap_or(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn w(dfa: &Dfa, names: &[&str]) -> Word {
        Word::from_letters(
            names
                .iter()
                .map(|n| dfa.letter_index(n).expect("unknown letter"))
                .collect::<Vec<_>>(),
        )
    }

    fn cv(zero: &[StateId], two: &[StateId]) -> CountVector {
        CountVector::from_parts(
            zero.iter().copied().collect(),
            two.iter().copied().collect(),
        )
    }

    #[test]
    fn abstract_of_single_letter() {
        // E_3, a_[1]: paper classes (1:0, 2:2+, 3:1) — 0-based states 0 and 1.
        let e3 = families::e3();
        assert_eq!(abstract_word(&e3, &w(&e3, &["a_[1]"])), cv(&[0], &[1]));
    }

    #[test]
    fn abstract_of_empty_word_is_identity() {
        let e5 = families::e5(true);
        assert_eq!(abstract_word(&e5, &Word::empty()), CountVector::identity());
    }

    #[test]
    fn abstract_of_composition() {
        // E_3, a_[3]·a_[2] maps every state to paper-state 1:
        // classes (1:2+, 2:0, 3:0).
        let e3 = families::e3();
        assert_eq!(
            abstract_word(&e3, &w(&e3, &["a_[3]", "a_[2]"])),
            cv(&[1, 2], &[0])
        );
    }

    #[test]
    fn step_matches_one_letter_abstraction() {
        let e3 = families::e3();
        for letter in 0..e3.letter_count() {
            assert_eq!(
                step(&e3, CountVector::identity(), letter),
                abstract_word(&e3, &Word::single(letter))
            );
        }
    }

    #[test]
    fn step_caps_preimage_sums() {
        // E_3: stepping paper classes (1:2+, 2:1, 3:0) by a_[2] gives
        // (1:2+, 2:0, 3:0), the abstraction of a_[3]·a_[2].
        let e3 = families::e3();
        let before = cv(&[2], &[0]);
        let after = step(&e3, before, e3.letter_index("a_[2]").unwrap());
        assert_eq!(after, cv(&[1, 2], &[0]));
        assert_eq!(after, abstract_word(&e3, &w(&e3, &["a_[3]", "a_[2]"])));
    }

    #[test]
    fn step_on_e5_hand_composition() {
        // E_5: step(abstract(a_[1]), a_[3]) = (1:2+, 2:1, 3:0, 4:1, 5:1).
        let e5 = families::e5(true);
        let start = abstract_word(&e5, &w(&e5, &["a_[1]"]));
        let next = step(&e5, start, e5.letter_index("a_[3]").unwrap());
        assert_eq!(next, cv(&[2], &[0]));
        assert_eq!(next, abstract_word(&e5, &w(&e5, &["a_[1]", "a_[3]"])));
    }

    #[test]
    fn enumerate_defect_one_signatures_of_e3() {
        let e3 = families::e3();
        let mut index = EnumerationIndex::new(&e3);
        index.enumerate_to(&e3, 1).unwrap();
        let pairs: Vec<(StateSet, StateSet)> = index
            .pairs_at(1)
            .unwrap()
            .into_iter()
            .map(|s| (s.excl, s.dupl))
            .collect();
        let expect = |a: &[StateId], b: &[StateId]| {
            (
                a.iter().copied().collect::<StateSet>(),
                b.iter().copied().collect::<StateSet>(),
            )
        };
        // Paper pairs ({1},{2}), ({2},{1}), ({3},{1}), shifted to 0-based.
        assert_eq!(
            pairs,
            vec![expect(&[0], &[1]), expect(&[1], &[0]), expect(&[2], &[0])]
        );
    }

    #[test]
    fn enumerate_cap_zero_holds_identity_only() {
        let dfa = families::cerny(5).unwrap();
        let mut index = EnumerationIndex::new(&dfa);
        index.enumerate_to(&dfa, 0).unwrap();
        let bucket = index.vectors_at(0).unwrap();
        assert_eq!(bucket, &[CountVector::identity()]);
        assert_eq!(
            index.witness(&CountVector::identity()),
            Some(&Word::empty())
        );
    }

    #[test]
    fn enumerate_defect_two_signatures_of_e3() {
        // Frozen from brute force over all words of length ≤ 4 (see the
        // exhaustive cross-check below): exactly three defect-2 pairs.
        let e3 = families::e3();
        let mut index = EnumerationIndex::new(&e3);
        index.enumerate_to(&e3, 2).unwrap();
        let pairs: Vec<(StateSet, StateSet)> = index
            .pairs_at(2)
            .unwrap()
            .into_iter()
            .map(|s| (s.excl, s.dupl))
            .collect();
        let set = |xs: &[StateId]| xs.iter().copied().collect::<StateSet>();
        assert_eq!(
            pairs,
            vec![
                (set(&[0, 1]), set(&[2])),
                (set(&[0, 2]), set(&[1])),
                (set(&[1, 2]), set(&[0])),
            ]
        );
    }

    #[test]
    fn brute_force_words_agree_with_index_on_e3() {
        // Independent oracle: enumerate every word of length ≤ 4 directly.
        let e3 = families::e3();
        let mut observed: Vec<(StateSet, StateSet)> = Vec::new();
        let m = e3.letter_count();
        let mut frontier = vec![Word::empty()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for word in &frontier {
                for letter in 0..m {
                    let extended = word.appended(letter);
                    if e3.defect(&extended) == 2 {
                        let pair = (e3.excl(&extended), e3.dupl(&extended));
                        if !observed.contains(&pair) {
                            observed.push(pair);
                        }
                    }
                    next.push(extended);
                }
            }
            frontier = next;
        }
        observed.sort();
        let mut index = EnumerationIndex::new(&e3);
        index.enumerate_to(&e3, 2).unwrap();
        let from_index: Vec<(StateSet, StateSet)> = index
            .pairs_at(2)
            .unwrap()
            .into_iter()
            .map(|s| (s.excl, s.dupl))
            .collect();
        assert_eq!(observed, from_index);
    }

    #[test]
    fn pairs_on_permutation_automaton_are_empty() {
        let dfa = families::random(5, 3, families::RandomKind::Permutation, 11).unwrap();
        let mut index = EnumerationIndex::new(&dfa);
        index.enumerate_to(&dfa, 3).unwrap();
        for k in 1..=3 {
            assert!(index.pairs_at(k).unwrap().is_empty());
        }
    }

    #[test]
    fn witnesses_revalidate_against_reference_abstraction() {
        let e5 = families::e5(true);
        let mut index = EnumerationIndex::new(&e5);
        index.enumerate_to(&e5, 4).unwrap();
        for k in 0..=4 {
            for sig in index.pairs_at(k).unwrap() {
                let reference = abstract_word(&e5, &sig.witness);
                assert_eq!(reference.excl(), sig.excl);
                assert_eq!(reference.dupl(), sig.dupl);
                assert_eq!(e5.defect(&sig.witness), k);
            }
        }
    }

    #[test]
    fn incremental_caps_match_fresh_enumeration() {
        let e5 = families::e5(true);
        let mut stepped = EnumerationIndex::new(&e5);
        for cap in 0..=4 {
            stepped.enumerate_to(&e5, cap).unwrap();
        }
        let mut fresh = EnumerationIndex::new(&e5);
        fresh.enumerate_to(&e5, 4).unwrap();
        for k in 0..=4 {
            let a: Vec<(StateSet, StateSet)> = stepped
                .pairs_at(k)
                .unwrap()
                .into_iter()
                .map(|s| (s.excl, s.dupl))
                .collect();
            let b: Vec<(StateSet, StateSet)> = fresh
                .pairs_at(k)
                .unwrap()
                .into_iter()
                .map(|s| (s.excl, s.dupl))
                .collect();
            assert_eq!(
                a, b,
                "bucket {k} differs between incremental and fresh runs"
            );
        }
    }

    #[test]
    fn incomplete_index_is_rejected() {
        let e3 = families::e3();
        let mut index = EnumerationIndex::new(&e3);
        assert_eq!(index.pairs_at(1), Err(Error::IndexIncomplete { needed: 1 }));
        index.enumerate_to(&e3, 1).unwrap();
        assert!(index.pairs_at(1).is_ok());
        assert_eq!(index.pairs_at(2), Err(Error::IndexIncomplete { needed: 2 }));
    }

    #[test]
    fn state_limit_is_enforced() {
        let dfa = families::random(6, 2, families::RandomKind::Arbitrary, 5).unwrap();
        let mut index = EnumerationIndex::with_limit(&dfa, 5);
        let err = index.enumerate_to(&dfa, 1).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)), "{err}");
    }
}
