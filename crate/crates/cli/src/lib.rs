//! File formats, verdict reports, and DOT export behind the `creachable`
//! command-line tool.
//!
//! Files and the library are 0-based throughout; only the CLI surface and
//! the DOT labels use 1-based state numbers.

pub mod dot;
pub mod format;
pub mod report;

use std::fmt;

/// Errors surfaced by the command-line layer, carrying their exit code.
///
/// Exit codes: 0 = completed (decide: SUCCESS), 3 = completed with a
/// FAILURE verdict or a verify mismatch, 1 = usage error, 2 = invalid
/// input, 4 = resource limit.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    InvalidInput(String),
    ResourceLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::ResourceLimit(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::InvalidInput(msg) => write!(f, "{msg}"),
            CliError::ResourceLimit(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<creachable::Error> for CliError {
    fn from(err: creachable::Error) -> CliError {
        match err {
            creachable::Error::ResourceLimit(msg) => CliError::ResourceLimit(msg),
            other => CliError::InvalidInput(other.to_string()),
        }
    }
}
