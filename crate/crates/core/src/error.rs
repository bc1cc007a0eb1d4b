//! Error type shared by all modules.

use thiserror::Error;

/// Errors surfaced by constructors and operations.
///
/// Numerical non-convergence is deliberately *not* an error: solvers report a
/// residual and leave the decision to the caller (the CLI maps a residual
/// above tolerance to its own exit code).
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter was outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A measure and a region (or two measures) live in different ambients.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    /// A text payload (measure file, key-value config) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Filesystem problem while reading or writing artifacts.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand used by validators.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
