//! Command-line layer over `entdist-core`: sweep grids and their config
//! file, deterministic CSV/JSON tables, and the Fock-space oracle report.

pub mod config;
pub mod oracle_check;
pub mod output;
pub mod sweep;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] entdist_core::Error),
    #[error("{0}")]
    Budget(String),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            _ => exit::INVALID_INPUT,
        }
    }

    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}
