//! The layered graph: level-1 construction, level-by-level extension,
//! strongly connected component analysis, and the SUCCESS/FAILURE decision
//! with failure witness extraction.
//!
//! Vertices are canonical state subsets; singletons stand for the states
//! themselves. Level k adds one vertex per support of a component of rank
//! at least k, inclusion edges from contained vertices, and enforced edges
//! `(C, p)` certified by a defect-k word `w` with `excl(w) ⊆ C` and
//! `p ∈ dupl(w)`. The decision iterates levels until the graph is strongly
//! connected (SUCCESS) or every component's rank falls below the next level
//! (FAILURE).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::dfa::{Dfa, StateId, StateSet, Word};
use crate::enumeration::{EnumerationIndex, DEFAULT_STATE_LIMIT};
use crate::error::{Error, Result};

/// An edge `(source, target)` certified by a word: `excl(word) ⊆ source`,
/// `target ∈ dupl(word)`, and `|excl(word)|` equals the edge's level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnforcedEdge {
    pub source: StateSet,
    pub target: StateId,
    pub level: usize,
    pub word: Word,
}

/// A proper-containment edge from a vertex into a later-level support
/// vertex, tagged with the level at which it was added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionEdge {
    pub source: StateSet,
    pub target: StateSet,
    pub level: usize,
}

/// The layered graph: singleton vertices for every state, support vertices
/// per level, enforced edges, and inclusion edges. Construction is
/// monotone: extending to a level only adds vertices and edges.
#[derive(Clone, Debug)]
pub struct LayeredGraph {
    state_count: usize,
    vertices: Vec<StateSet>,
    vertex_ids: HashMap<StateSet, usize>,
    /// Registered level members (level, supports), for levels ≥ 2.
    levels: Vec<(usize, Vec<StateSet>)>,
    enforced: Vec<EnforcedEdge>,
    enforced_keys: HashSet<(StateSet, StateId, usize)>,
    inclusions: Vec<InclusionEdge>,
    inclusion_keys: HashSet<(StateSet, StateSet)>,
    max_level: usize,
}

impl LayeredGraph {
    fn with_singletons(state_count: usize) -> LayeredGraph {
        let vertices: Vec<StateSet> = (0..state_count).map(StateSet::singleton).collect();
        let vertex_ids = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        LayeredGraph {
            state_count,
            vertices,
            vertex_ids,
            levels: Vec::new(),
            enforced: Vec::new(),
            enforced_keys: HashSet::new(),
            inclusions: Vec::new(),
            inclusion_keys: HashSet::new(),
            max_level: 1,
        }
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The level k such that this graph is Γ_k.
    pub fn max_level(&self) -> usize {
        self.max_level
    }

    /// All vertices in insertion order: singletons first, then supports.
    pub fn vertices(&self) -> &[StateSet] {
        &self.vertices
    }

    /// Support vertices only (everything past the n singletons).
    pub fn subset_vertices(&self) -> &[StateSet] {
        &self.vertices[self.state_count..]
    }

    pub fn enforced_edges(&self) -> &[EnforcedEdge] {
        &self.enforced
    }

    pub fn inclusion_edges(&self) -> &[InclusionEdge] {
        &self.inclusions
    }

    /// Registered `(level, members)` pairs for levels ≥ 2 in ascending order.
    pub fn levels(&self) -> &[(usize, Vec<StateSet>)] {
        &self.levels
    }

    /// The members of Q_k registered for `level`, if that level was built.
    pub fn level_members(&self, level: usize) -> Option<&[StateSet]> {
        self.levels
            .iter()
            .find(|(l, _)| *l == level)
            .map(|(_, members)| members.as_slice())
    }

    pub fn vertex_id(&self, v: StateSet) -> Option<usize> {
        self.vertex_ids.get(&v).copied()
    }

    fn add_vertex(&mut self, v: StateSet) -> usize {
        if let Some(&id) = self.vertex_ids.get(&v) {
            return id;
        }
        let id = self.vertices.len();
        self.vertices.push(v);
        self.vertex_ids.insert(v, id);
        id
    }

    /// Keeps the first enforcing word per (source, target, level).
    fn add_enforced(&mut self, source: StateSet, target: StateId, level: usize, word: Word) {
        if self.enforced_keys.insert((source, target, level)) {
            self.enforced.push(EnforcedEdge {
                source,
                target,
                level,
                word,
            });
        }
    }

    fn add_inclusion(&mut self, source: StateSet, target: StateSet, level: usize) {
        debug_assert!(source.is_proper_subset_of(target));
        if self.inclusion_keys.insert((source, target)) {
            self.inclusions.push(InclusionEdge {
                source,
                target,
                level,
            });
        }
    }

    /// Deterministic adjacency over vertex ids (edge insertion order).
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.enforced {
            let s = self.vertex_ids[&e.source];
            let t = self.vertex_ids[&StateSet::singleton(e.target)];
            adj[s].push(t);
        }
        for e in &self.inclusions {
            let s = self.vertex_ids[&e.source];
            let t = self.vertex_ids[&e.target];
            adj[s].push(t);
        }
        adj
    }
}

/// One strongly connected component: its vertices (sorted), its support
/// (the states among its vertices), and its rank (the support size).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccComponent {
    pub vertices: Vec<StateSet>,
    pub support: StateSet,
    pub rank: usize,
}

/// The component partition of a layered graph together with the
/// reachability order between components.
#[derive(Clone, Debug)]
pub struct SccInfo {
    components: Vec<SccComponent>,
    component_of: HashMap<StateSet, usize>,
    /// Condensation edges: distinct components reachable in one step.
    successors: Vec<BTreeSet<usize>>,
}

impl SccInfo {
    pub fn components(&self) -> &[SccComponent] {
        &self.components
    }

    pub fn component_of(&self, v: StateSet) -> Option<usize> {
        self.component_of.get(&v).copied()
    }

    pub fn successors(&self, component: usize) -> &BTreeSet<usize> {
        &self.successors[component]
    }

    /// A minimal component in the reachability order: nothing outside it is
    /// reachable from it.
    pub fn is_minimal(&self, component: usize) -> bool {
        self.successors[component].is_empty()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn max_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).max().unwrap_or(0)
    }
}

/// Computes the exact component partition of the graph (iterative Tarjan),
/// plus supports, ranks, and the condensation. A single-vertex graph is
/// strongly connected.
pub fn sccs(graph: &LayeredGraph) -> SccInfo {
    let adj = graph.adjacency();
    let vertex_count = graph.vertices.len();
    let raw_components = tarjan(&adj, vertex_count);

    let mut components: Vec<SccComponent> = raw_components
        .into_iter()
        .map(|ids| {
            let mut vertices: Vec<StateSet> =
                ids.into_iter().map(|id| graph.vertices[id]).collect();
            vertices.sort();
            let support: StateSet = vertices
                .iter()
                .filter(|v| v.len() == 1)
                .map(|v| v.first().unwrap())
                .collect();
            let rank = support.len();
            SccComponent {
                vertices,
                support,
                rank,
            }
        })
        .collect();
    components.sort_by(|a, b| a.vertices.cmp(&b.vertices));

    let mut component_of = HashMap::new();
    for (i, c) in components.iter().enumerate() {
        for &v in &c.vertices {
            component_of.insert(v, i);
        }
    }
    let mut successors = vec![BTreeSet::new(); components.len()];
    let mut record = |s: StateSet, t: StateSet| {
        let cs = component_of[&s];
        let ct = component_of[&t];
        if cs != ct {
            successors[cs].insert(ct);
        }
    };
    for e in &graph.enforced {
        record(e.source, StateSet::singleton(e.target));
    }
    for e in &graph.inclusions {
        record(e.source, e.target);
    }
    SccInfo {
        components,
        component_of,
        successors,
    }
}

/// Iterative Tarjan over an adjacency list; returns the components as id
/// lists, in completion order.
fn tarjan(adj: &[Vec<usize>], vertex_count: usize) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; vertex_count];
    let mut lowlink = vec![0usize; vertex_count];
    let mut on_stack = vec![false; vertex_count];
    let mut stack: Vec<usize> = Vec::new();
    let mut counter = 0usize;
    let mut components = Vec::new();

    for root in 0..vertex_count {
        if index[root] != UNVISITED {
            continue;
        }
        let mut calls: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        lowlink[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next_child)) = calls.last_mut() {
            if *next_child < adj[v].len() {
                let w = adj[v][*next_child];
                *next_child += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    lowlink[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&mut (parent, _)) = calls.last_mut() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

/// Builds Γ_1: all n singleton vertices plus one enforced level-1 edge per
/// realizable defect-1 signature.
pub fn build_gamma1(dfa: &Dfa, index: &EnumerationIndex) -> Result<LayeredGraph> {
    let mut graph = LayeredGraph::with_singletons(dfa.state_count());
    for sig in index.pairs_at(1)? {
        // Defect-1 words have a unique excluded and a unique duplicate state.
        debug_assert_eq!(sig.excl.len(), 1);
        debug_assert_eq!(sig.dupl.len(), 1);
        for p in sig.dupl.iter() {
            graph.add_enforced(sig.excl, p, 1, sig.witness.clone());
        }
    }
    Ok(graph)
}

/// Extends Γ_{k−1} to Γ_k: registers Q_k (the supports of rank-≥k
/// components), adds inclusion edges from member states and from contained
/// earlier support vertices, and adds the enforced level-k edges. A support
/// equal to an existing vertex is reused; only missing edges are added.
pub fn extend_to_level(
    graph: &mut LayeredGraph,
    dfa: &Dfa,
    index: &EnumerationIndex,
    k: usize,
) -> Result<()> {
    if k < 2 || k != graph.max_level + 1 {
        return Err(Error::PreconditionViolated(format!(
            "extension to level {k} requires a graph at level {}",
            k.saturating_sub(1)
        )));
    }
    if dfa.state_count() != graph.state_count() {
        return Err(Error::PreconditionViolated(
            "graph belongs to a different automaton".into(),
        ));
    }
    let scc = sccs(graph);
    if scc.is_strongly_connected() {
        return Err(Error::PreconditionViolated(
            "the graph is strongly connected; the process already stopped with SUCCESS".into(),
        ));
    }
    let mut members: Vec<StateSet> = scc
        .components()
        .iter()
        .filter(|c| c.rank >= k)
        .map(|c| c.support)
        .collect();
    members.sort();
    if members.is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "every component has rank below {k}; the process already stopped with FAILURE"
        )));
    }
    let signatures = index.pairs_at(k)?;

    let earlier_supports: Vec<StateSet> = graph.subset_vertices().to_vec();
    for &support in &members {
        graph.add_vertex(support);
        for q in support.iter() {
            graph.add_inclusion(StateSet::singleton(q), support, k);
        }
        for &earlier in &earlier_supports {
            if earlier.is_proper_subset_of(support) {
                graph.add_inclusion(earlier, support, k);
            }
        }
    }
    for sig in &signatures {
        // Q_k members are pairwise disjoint, so at most one contains excl.
        if let Some(&support) = members.iter().find(|c| sig.excl.is_subset_of(**c)) {
            for p in sig.dupl.iter() {
                graph.add_enforced(support, p, k, sig.witness.clone());
            }
        }
    }
    graph.levels.push((k, members));
    graph.max_level = k;
    Ok(())
}

/// Outcome of the decision process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Success => write!(f, "SUCCESS"),
            Status::Failure => write!(f, "FAILURE"),
        }
    }
}

/// How a failure witness subset was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessProvenance {
    /// Complement of the support of a minimal component; unreachable by the
    /// necessity argument.
    ProofDerived,
    /// Complement of some component's support, emitted when every minimal
    /// component has an empty support; must be confirmed by the oracle.
    Fallback,
}

/// A candidate unreachable subset attached to a FAILURE verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureWitness {
    pub subset: StateSet,
    pub provenance: WitnessProvenance,
}

/// The result of the decision process: status, terminal level, the final
/// graph and its component analysis, and failure witness candidates.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub level: usize,
    pub graph: LayeredGraph,
    pub scc: SccInfo,
    pub failure_witnesses: Vec<FailureWitness>,
}

impl Verdict {
    pub fn is_success(&self) -> bool {
        self.status == Status::Success
    }
}

/// Tuning knobs for [`decide_with`].
#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Maximum automaton size accepted by the signature enumeration.
    pub enumeration_limit: usize,
}

impl Default for DecideOptions {
    fn default() -> DecideOptions {
        DecideOptions {
            enumeration_limit: DEFAULT_STATE_LIMIT,
        }
    }
}

/// Decides complete reachability with default options.
pub fn decide(dfa: &Dfa) -> Result<Verdict> {
    decide_with(dfa, &DecideOptions::default())
}

/// Runs the layered process: build Γ_1, then per level k check the two
/// stopping rules — strongly connected (SUCCESS at k) or all component
/// ranks below k+1 (FAILURE at k) — and otherwise extend to level k+1.
/// Terminates within n−1 levels.
pub fn decide_with(dfa: &Dfa, options: &DecideOptions) -> Result<Verdict> {
    let mut index = EnumerationIndex::with_limit(dfa, options.enumeration_limit);
    index.enumerate_to(dfa, 1)?;
    let mut graph = build_gamma1(dfa, &index)?;
    let mut level = 1;
    loop {
        let scc = sccs(&graph);
        if scc.is_strongly_connected() {
            return Ok(Verdict {
                status: Status::Success,
                level,
                graph,
                scc,
                failure_witnesses: Vec::new(),
            });
        }
        if scc.max_rank() < level + 1 {
            let failure_witnesses = derive_failure_witnesses(&graph, &scc);
            return Ok(Verdict {
                status: Status::Failure,
                level,
                graph,
                scc,
                failure_witnesses,
            });
        }
        level += 1;
        index.enumerate_to(dfa, level)?;
        extend_to_level(&mut graph, dfa, &index, level)?;
    }
}

/// Failure witness candidates for a FAILURE verdict.
///
/// Every minimal component with a non-empty support D yields the
/// proof-derived subset Q∖D. When all minimal components have empty
/// supports (they are dangling support vertices), the complements of all
/// non-empty supports are emitted as fallback candidates in increasing rank
/// order; those are candidates only and require oracle confirmation.
pub fn failure_witness_sets(dfa: &Dfa, verdict: &Verdict) -> Result<Vec<FailureWitness>> {
    if verdict.status != Status::Failure {
        return Err(Error::PreconditionViolated(
            "failure witnesses exist only for FAILURE verdicts".into(),
        ));
    }
    if dfa.state_count() != verdict.graph.state_count() {
        return Err(Error::PreconditionViolated(
            "verdict belongs to a different automaton".into(),
        ));
    }
    Ok(derive_failure_witnesses(&verdict.graph, &verdict.scc))
}

fn derive_failure_witnesses(graph: &LayeredGraph, scc: &SccInfo) -> Vec<FailureWitness> {
    let n = graph.state_count();
    let proof_derived: Vec<FailureWitness> = scc
        .components()
        .iter()
        .enumerate()
        .filter(|(i, c)| scc.is_minimal(*i) && !c.support.is_empty())
        .map(|(_, c)| FailureWitness {
            subset: c.support.complement_within(n),
            provenance: WitnessProvenance::ProofDerived,
        })
        .collect();
    if !proof_derived.is_empty() {
        return proof_derived;
    }
    let mut supports: Vec<&SccComponent> = scc
        .components()
        .iter()
        .filter(|c| !c.support.is_empty())
        .collect();
    supports.sort_by_key(|c| (c.rank, c.support));
    supports
        .into_iter()
        .map(|c| FailureWitness {
            subset: c.support.complement_within(n),
            provenance: WitnessProvenance::Fallback,
        })
        .collect()
}
