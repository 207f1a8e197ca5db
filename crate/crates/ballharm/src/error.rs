//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A resolution, order, or other configuration value is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// A file could not be parsed; `line` is 1-based.
    #[error("parse error at {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    /// Input carries no usable geometric information.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A linear system has fewer samples than unknowns.
    #[error("underdetermined system: need at least {required} samples, got {got}")]
    Underdetermined { required: usize, got: usize },

    /// A computation produced NaN or infinity.
    #[error("non-finite value encountered in {0}")]
    NonFinite(String),

    /// Two operands disagree on convention, order, or quadrature.
    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
