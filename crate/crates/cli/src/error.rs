use std::io;

use thiserror::Error;

/// Failure of a run, mapped onto the process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("solver error: {0}")]
    Solver(#[from] ptwell_core::Error),

    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidFlag(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}
