//! CLI-level errors, carrying the process exit code policy:
//! 2 for usage and validation problems, 3 for oracle failures.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config, or parameters that fail validation.
    Validation(String),
    /// A verification oracle could not run or disagreed fatally.
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Oracle(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Oracle(msg) => write!(f, "oracle failure: {msg}"),
        }
    }
}

impl From<evidence_core::Error> for CliError {
    fn from(err: evidence_core::Error) -> Self {
        match err {
            evidence_core::Error::QuadratureFailure { .. } => CliError::Oracle(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
