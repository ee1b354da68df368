use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A transition table violated one of the automaton invariants.
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// A generator or operation was called with out-of-range parameters.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An input exceeds a guarded size bound.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The enumeration index has not been advanced far enough for the query.
    #[error("enumeration index incomplete: defect bucket {needed} has not been enumerated")]
    IndexIncomplete { needed: usize },

    /// An operation was invoked in a state its contract excludes.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// No enforced edge applies to the current subset. This contradicts a
    /// SUCCESS verdict and signals an internal invariant violation.
    #[error("no enforced edge applies to the current subset; contradicts the SUCCESS verdict")]
    NoEdgeFound,

    /// The requested target subset was empty.
    #[error("target subset must not be empty")]
    EmptyTarget,

    /// A graph rendering was requested for a level the graph does not have.
    #[error("level {level} out of range; the graph extends to level {max}")]
    LevelOutOfRange { level: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
