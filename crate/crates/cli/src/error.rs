//! CLI-level failure classification: usage and document problems exit with
//! code 2, failed checks (suite failures, flagged assertions, equality
//! comparisons) exit with code 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation: missing input, unknown names, malformed literals.
    #[error("{0}")]
    Usage(String),

    /// The document does not match the schema; the path locates the field.
    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    /// The document is not even JSON.
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    /// Engine-side precondition violations surfaced to the user.
    #[error("{0}")]
    Engine(#[from] lgroup_core::error::Error),

    /// A requested check ran to completion and the answer is "no".
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
