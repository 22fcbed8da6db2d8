use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),
    #[error("invalid partition or composition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("stratum is empty: {0}")]
    EmptyStratum(String),
    #[error("sampling budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("no strict majority among samples: {0}")]
    NoMajority(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
