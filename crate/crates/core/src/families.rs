//! Generators for the named example automata and for seeded random tables.
//!
//! The classical presentations label states 1…n; every generator here uses
//! the fixed translation "presentation state i ↔ implementation state i−1",
//! so all tables below are 0-based. Letter names keep their bracketed
//! presentation indices (`a_[1]`, `a_[1,2]`, …) since those are names, not
//! state references.

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// The 3-state, 4-letter automaton E_3 = E_{3,2}.
///
/// Letters: a_[1] merges 1 into 2, a_[2] merges 2 into 1, a_[3] additionally
/// moves 3 down to 2, and a_[1,2] sends every state to 3 (in presentation
/// labels).
pub fn e3() -> Dfa {
    Dfa::new(
        3,
        vec![
            "a_[1]".into(),
            "a_[2]".into(),
            "a_[3]".into(),
            "a_[1,2]".into(),
        ],
        vec![
            vec![1, 1, 2], // a_[1]
            vec![0, 0, 2], // a_[2]
            vec![0, 0, 1], // a_[3]
            vec![2, 2, 2], // a_[1,2]
        ],
    )
    .expect("E_3 table is valid")
}

/// The 5-state, 8-letter automaton E_5.
///
/// The table circulates in two variants differing in one entry. With
/// `corrected = true` (used as the default throughout), `5·a_[2] = 5`:
/// a_[2] is then a defect-1 letter excluding state 2 and duplicating
/// state 1, and the automaton is completely reachable with the decision
/// ending at level 3. With `corrected = false`, the verbatim entry
/// `5·a_[2] = 4` makes a_[2] a defect-2 letter, the level-1 graph loses
/// the edge 2→1, and the automaton is not completely reachable.
pub fn e5(corrected: bool) -> Dfa {
    let a2_last = if corrected { 4 } else { 3 };
    Dfa::new(
        5,
        vec![
            "a_[1]".into(),
            "a_[2]".into(),
            "a_[3]".into(),
            "a_[4]".into(),
            "a_[5]".into(),
            "a_[1,2]".into(),
            "a_[4,5]".into(),
            "a_[1,3]".into(),
        ],
        vec![
            vec![1, 1, 2, 3, 4],       // a_[1]
            vec![0, 0, 2, 3, a2_last], // a_[2]
            vec![0, 0, 1, 3, 4],       // a_[3]
            vec![0, 1, 2, 4, 4],       // a_[4]
            vec![0, 1, 2, 3, 3],       // a_[5]
            vec![2, 2, 2, 3, 4],       // a_[1,2]
            vec![0, 0, 1, 2, 2],       // a_[4,5]
            vec![3, 3, 3, 4, 4],       // a_[1,3]
        ],
    )
    .expect("E_5 table is valid")
}

/// Presentation-label action `i · a_[j]` of the E_{n,k} family, with
/// `ell = n−k+1`. All of `i`, `j`, and the result are 1-based.
fn enk_letter_action(i: usize, j: usize, ell: usize) -> usize {
    if j <= ell {
        if i != j {
            i
        } else if j < ell {
            i + 1
        } else {
            1 // i = j = ell
        }
    } else if i > j {
        i
    } else if i == j {
        i - 1
    } else {
        enk_letter_action(i, j - 1, ell)
    }
}

/// The family E_{n,k} (and E′_{n,k} when `prime` is set), for 2 ≤ k < n.
///
/// Letters are a_[1]…a_[n] plus a_[1,ℓ]…a_[1,n−1] with ℓ = n−k+1; the primed
/// variant omits a_[1,n−1]. E_{n,k} is completely reachable and E′_{n,k} is
/// not. Note that the decision runs to level n−1 on both: a state x > ℓ is
/// duplicated only by the letter a_[1,x−1], whose defect is x−1, so the last
/// state can enter the growing component no earlier than level n−1.
pub fn e_nk(n: usize, k: usize, prime: bool) -> Result<Dfa> {
    if !(2 <= k && k < n) {
        return Err(Error::InvalidParameters(format!(
            "family requires 2 ≤ k < n, got n={n}, k={k}"
        )));
    }
    let ell = n - k + 1;
    let mut letters = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    // Columns j = 1…n share suffixes through the recursion
    // i·a_[j] = i·a_[j−1] for i < j, so each column can copy the previous
    // one's prefix (memoized descent on j).
    for j in 1..=n {
        letters.push(format!("a_[{j}]"));
        let mut row = Vec::with_capacity(n);
        for i in 1..=n {
            let target = if j > ell && i < j {
                delta[j - 2][i - 1] + 1 // already 0-based in delta
            } else {
                enk_letter_action(i, j, ell)
            };
            row.push(target - 1);
        }
        delta.push(row);
    }
    let last_bracket = if prime { n - 2 } else { n - 1 };
    for j in ell..=last_bracket {
        letters.push(format!("a_[1,{j}]"));
        let row = (1..=n)
            .map(|i| if i <= j { j + 1 } else { i } - 1)
            .collect();
        delta.push(row);
    }
    Dfa::new(n, letters, delta)
}

/// The classical n-state Černý automaton: letter `a` is the cyclic shift
/// i ↦ i+1 (mod n) and letter `b` merges state 0 into 1, fixing the rest.
pub fn cerny(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "the Černý automaton needs at least 2 states, got {n}"
        )));
    }
    let shift = (0..n).map(|i| (i + 1) % n).collect();
    let merge = (0..n).map(|i| if i == 0 { 1 } else { i }).collect();
    Dfa::new(n, vec!["a".into(), "b".into()], vec![shift, merge])
}

/// Shape of a randomly drawn transition table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    /// Every entry drawn uniformly from the state set.
    Arbitrary,
    /// Every letter drawn as a uniform permutation of the states.
    Permutation,
}

/// A seeded random automaton; identical `(n, m, kind, seed)` always yields
/// the identical table.
pub fn random(n: usize, m: usize, kind: RandomKind, seed: u64) -> Result<Dfa> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters(
            "random automata need n ≥ 1 and m ≥ 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let delta = (0..m)
        .map(|_| match kind {
            RandomKind::Arbitrary => (0..n).map(|_| rng.below(n as u64) as usize).collect(),
            RandomKind::Permutation => rng.permutation(n),
        })
        .collect();
    let letters = (0..m).map(letter_label).collect();
    Dfa::new(n, letters, delta)
}

/// Spreadsheet-style letter labels: a, b, …, z, aa, ab, …
pub fn letter_label(index: usize) -> String {
    let mut label = String::new();
    let mut i = index;
    loop {
        label.insert(0, (b'a' + (i % 26) as u8) as char);
        i /= 26;
        if i == 0 {
            break;
        }
        i -= 1;
    }
    label
}
