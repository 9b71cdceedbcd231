use thiserror::Error;

/// Errors produced by the validation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("cluster {0} is empty")]
    EmptyCluster(usize),

    #[error("{method} failed at K={k}: {reason}")]
    MethodFailure {
        method: String,
        k: usize,
        reason: String,
    },

    #[error("gave up after {attempts} attempts: {reason}")]
    RetryCapExceeded { attempts: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
