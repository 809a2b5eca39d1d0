//! Error type shared across the pipeline.
//!
//! Variants are grouped by how a batch run should react: `Validation` and
//! `Parse` mean the inputs are bad (exit code 1), `Numeric` means a fit or
//! training run failed numerically (exit code 2).

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// Malformed file content (bad CSV row, bad JSON, bad PGM header).
    #[error("parse error in {path}: {message}")]
    Parse { path: PathBuf, message: String },

    /// Violated precondition or domain invariant.
    #[error("{0}")]
    Validation(String),

    /// Numeric failure during fitting or training.
    #[error("{0}")]
    Numeric(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Error::Validation(message.into())
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Error::Numeric(message.into())
    }

    /// Process exit code for the CLI: 1 for bad inputs, 2 for numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numeric(_) => 2,
            _ => 1,
        }
    }
}
