use thiserror::Error;

use crate::qrep::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("expected {expected} operators for a Q-rep, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("Q-rep validation failed: {0}")]
    InvalidQRep(ValidationReport),

    #[error("SIC validation failed for {label}: max Gram deviation {deviation:.3e}")]
    InvalidSic { label: String, deviation: f64 },

    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),

    #[error("exhaustive search refused for d = {0} (2^{{d^2}} subsets); use stochastic mode")]
    TooLarge(usize),

    #[error("no WH fiducial for these parameters: {0}")]
    NoSolution(String),

    #[error("malformed data: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
