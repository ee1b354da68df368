//! Decide whether every non-empty subset of a DFA's states is the image of
//! the full state set under some input word, and synthesize witness words.
//!
//! The decision builds a layered graph over state subsets: level 1 records
//! the excluded/duplicate state pairs of defect-1 words, and each further
//! level k adds the supports of rank-k strongly connected components
//! together with the edges enforced by defect-k words. The automaton is
//! completely reachable exactly when the process ends with a strongly
//! connected graph; on success, walking enforced edges backward yields a
//! factorized word reaching any requested subset, and on failure the
//! minimal components certify unreachable subsets.
//!
//! A brute-force power-automaton search ([`oracle`]) provides independent
//! ground truth at small sizes, and [`families`] generates the classical
//! example automata plus seeded random instances.
//!
//! ```
//! use creachable::{decide, families, reach_word, StateSet};
//!
//! let dfa = families::e3();
//! let verdict = decide(&dfa)?;
//! assert!(verdict.is_success());
//!
//! // A word carrying the full state set onto {2} (0-based).
//! let target: StateSet = [2].into_iter().collect();
//! let plan = reach_word(&dfa, &verdict, target)?;
//! assert_eq!(dfa.image(dfa.all_states(), &plan.total), target);
//! # Ok::<(), creachable::Error>(())
//! ```

pub mod dfa;
pub mod enumeration;
mod error;
pub mod families;
pub mod gamma;
pub mod oracle;
pub mod rng;
pub mod witness;

pub use dfa::{Dfa, LetterId, StateId, StateSet, Word, MAX_STATES};
pub use enumeration::{
    abstract_word, step, CountVector, DefectSignature, EnumerationIndex, MultClass,
    DEFAULT_STATE_LIMIT,
};
pub use error::{Error, Result};
pub use gamma::{
    build_gamma1, decide, decide_with, extend_to_level, failure_witness_sets, sccs, DecideOptions,
    EnforcedEdge, FailureWitness, InclusionEdge, LayeredGraph, SccComponent, SccInfo, Status,
    Verdict, WitnessProvenance,
};
pub use oracle::{
    is_completely_reachable, reachable_family, shortest_word_to, Derivation, ReachabilityTable,
    ORACLE_STATE_LIMIT,
};
pub use witness::{
    don_report, reach_word, DonEntry, DonReport, WitnessFactor, WitnessPlan, DON_REPORT_STATE_LIMIT,
};
