//! Structured verdict reports: the decision outcome, the full layered
//! graph, the component analysis, and any failure witnesses, as a JSON
//! document that is byte-stable across runs.

use creachable::{Dfa, StateSet, Verdict, WitnessProvenance, Word};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub status: String,
    pub k: usize,
    pub levels: Vec<LevelReport>,
    pub enforced_edges: Vec<EnforcedEdgeReport>,
    pub inclusion_edges: Vec<InclusionEdgeReport>,
    pub sccs: Vec<SccReport>,
    pub failure_witnesses: Vec<FailureWitnessReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub vertices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnforcedEdgeReport {
    pub source: Vec<usize>,
    pub target: usize,
    pub level: usize,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionEdgeReport {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SccReport {
    pub support: Vec<usize>,
    pub rank: usize,
    pub vertices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureWitnessReport {
    pub subset: Vec<usize>,
    pub provenance: String,
}

fn states(set: StateSet) -> Vec<usize> {
    set.iter().collect()
}

fn word_names(dfa: &Dfa, word: &Word) -> Vec<String> {
    word.letters()
        .iter()
        .map(|&l| dfa.letter_name(l).to_string())
        .collect()
}

/// Builds the report; all lists are emitted in a fixed canonical order so
/// identical inputs produce identical bytes.
pub fn verdict_report(dfa: &Dfa, verdict: &Verdict) -> VerdictReport {
    let levels = verdict
        .graph
        .levels()
        .iter()
        .map(|(level, members)| LevelReport {
            level: *level,
            vertices: members.iter().map(|&s| states(s)).collect(),
        })
        .collect();

    let mut enforced: Vec<&creachable::EnforcedEdge> =
        verdict.graph.enforced_edges().iter().collect();
    enforced.sort_by_key(|e| (e.level, e.source, e.target));
    let enforced_edges = enforced
        .into_iter()
        .map(|e| EnforcedEdgeReport {
            source: states(e.source),
            target: e.target,
            level: e.level,
            word: word_names(dfa, &e.word),
        })
        .collect();

    let mut inclusions: Vec<&creachable::InclusionEdge> =
        verdict.graph.inclusion_edges().iter().collect();
    inclusions.sort_by_key(|e| (e.source, e.target));
    let inclusion_edges = inclusions
        .into_iter()
        .map(|e| InclusionEdgeReport {
            source: states(e.source),
            target: states(e.target),
        })
        .collect();

    let sccs = verdict
        .scc
        .components()
        .iter()
        .map(|c| SccReport {
            support: states(c.support),
            rank: c.rank,
            vertices: c.vertices.iter().map(|&v| states(v)).collect(),
        })
        .collect();

    let failure_witnesses = verdict
        .failure_witnesses
        .iter()
        .map(|w| FailureWitnessReport {
            subset: states(w.subset),
            provenance: match w.provenance {
                WitnessProvenance::ProofDerived => "proof-derived".to_string(),
                WitnessProvenance::Fallback => "fallback".to_string(),
            },
        })
        .collect();

    VerdictReport {
        status: verdict.status.to_string(),
        k: verdict.level,
        levels,
        enforced_edges,
        inclusion_edges,
        sccs,
        failure_witnesses,
    }
}

impl VerdictReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
