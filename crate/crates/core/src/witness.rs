//! Witness synthesis: from a SUCCESS verdict, a factorized word reaching
//! any non-empty target subset, plus the subset-length diagnostic report.
//!
//! The construction walks backward from the target P. Any enforced edge
//! (C, p) with p ∈ P and C ∩ P = ∅ supplies a word w whose excluded set
//! avoids P, so the full preimage R of P under w satisfies R·w = P and is
//! strictly larger than P (the duplicate state p has two preimages). On a
//! SUCCESS verdict such an edge exists at every step, so the walk reaches Q
//! in at most n − |P| steps, and the factors applied in forward order carry
//! Q onto P.

use crate::dfa::{Dfa, StateId, StateSet, Word};
use crate::error::{Error, Result};
use crate::gamma::{EnforcedEdge, Status, Verdict};

/// One factor of a witness plan: the enforcing word of the edge used, the
/// factor's defect (the edge level), and the edge endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFactor {
    pub word: Word,
    pub defect: usize,
    pub edge_source: StateSet,
    pub edge_target: StateId,
}

/// A factorized word whose total image of Q equals the target subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPlan {
    pub target: StateSet,
    /// Factors in application order; empty when the target is Q itself.
    pub factors: Vec<WitnessFactor>,
    /// Concatenation of the factor words in application order.
    pub total: Word,
}

/// Synthesizes a plan reaching `target` from Q on a SUCCESS verdict.
///
/// Edges are scanned by increasing level, then lexicographic source, then
/// smallest target state, so identical inputs yield identical plans.
pub fn reach_word(dfa: &Dfa, verdict: &Verdict, target: StateSet) -> Result<WitnessPlan> {
    if verdict.status != Status::Success {
        return Err(Error::PreconditionViolated(
            "witness synthesis requires a SUCCESS verdict".into(),
        ));
    }
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let full = dfa.all_states();
    if !target.is_subset_of(full) {
        return Err(Error::InvalidParameters(format!(
            "target {target} contains states outside 0..{}",
            dfa.state_count()
        )));
    }

    let mut edges: Vec<&EnforcedEdge> = verdict.graph.enforced_edges().iter().collect();
    edges.sort_by_key(|e| (e.level, e.source, e.target));

    let mut reversed: Vec<WitnessFactor> = Vec::new();
    let mut current = target;
    while current != full {
        let edge = edges
            .iter()
            .find(|e| current.contains(e.target) && e.source.is_disjoint(current))
            .ok_or(Error::NoEdgeFound)?;
        let grown = dfa.preimage(&edge.word, current);
        debug_assert!(grown.len() > current.len());
        debug_assert_eq!(dfa.image(grown, &edge.word), current);
        reversed.push(WitnessFactor {
            word: edge.word.clone(),
            defect: edge.level,
            edge_source: edge.source,
            edge_target: edge.target,
        });
        current = grown;
    }
    reversed.reverse();
    let mut total = Word::empty();
    for factor in &reversed {
        total = total.concat(&factor.word);
    }
    Ok(WitnessPlan {
        target,
        factors: reversed,
        total,
    })
}

/// Guard for the exhaustive subset walk in [`don_report`].
pub const DON_REPORT_STATE_LIMIT: usize = 12;

/// One subset's diagnostic line: the synthesized witness length against the
/// bound n·(n−|P|).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DonEntry {
    pub target: StateSet,
    pub witness_length: usize,
    pub bound: usize,
}

/// Length diagnostics for every non-empty subset. Purely informational:
/// synthesized witnesses are not length-optimal, so exceeding the bound
/// refutes nothing.
#[derive(Clone, Debug)]
pub struct DonReport {
    /// One entry per non-empty subset, in lexicographic subset order.
    pub entries: Vec<DonEntry>,
    /// Largest witness_length/bound ratio over entries with a positive
    /// bound; `None` when every bound is zero (single-state automata).
    pub max_ratio: Option<f64>,
    /// Entries whose witness exceeded its bound.
    pub exceedances: Vec<DonEntry>,
}

/// Synthesizes a witness for every non-empty subset of Q and compares each
/// length against n·(n−|P|).
pub fn don_report(dfa: &Dfa, verdict: &Verdict) -> Result<DonReport> {
    if verdict.status != Status::Success {
        return Err(Error::PreconditionViolated(
            "the diagnostic report requires a SUCCESS verdict".into(),
        ));
    }
    let n = dfa.state_count();
    if n > DON_REPORT_STATE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "subset report is guarded to {DON_REPORT_STATE_LIMIT} states, got {n}"
        )));
    }
    let mut targets: Vec<StateSet> = (1..(1u64 << n)).map(StateSet::from_bits).collect();
    targets.sort();
    let mut entries = Vec::with_capacity(targets.len());
    for target in targets {
        let plan = reach_word(dfa, verdict, target)?;
        entries.push(DonEntry {
            target,
            witness_length: plan.total.len(),
            bound: n * (n - target.len()),
        });
    }
    let max_ratio = entries
        .iter()
        .filter(|e| e.bound > 0)
        .map(|e| e.witness_length as f64 / e.bound as f64)
        .fold(None, |acc: Option<f64>, r| {
            Some(acc.map_or(r, |a| a.max(r)))
        });
    let exceedances = entries
        .iter()
        .filter(|e| e.witness_length > e.bound)
        .cloned()
        .collect();
    Ok(DonReport {
        entries,
        max_ratio,
        exceedances,
    })
}
