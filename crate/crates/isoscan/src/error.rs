use std::fmt;
use std::io;

/// Failure classes of the command-line tool, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("network error: {0}")]
    Network(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Network(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn validation(msg: impl fmt::Display) -> CliError {
        CliError::Validation(msg.to_string())
    }
}

impl From<isoscan_core::error::Error> for CliError {
    fn from(e: isoscan_core::error::Error) -> Self {
        use isoscan_core::error::Error;
        match e {
            Error::Internal(m) => CliError::Internal(m),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("malformed JSON: {e}"))
    }
}
