use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values built over different scalar contexts or groups were combined.
    #[error("context mismatch: {0}")]
    Context(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    /// A table is missing entries or violates a structural invariant.
    #[error("malformed structure: {0}")]
    Structural(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    ResourceLimit { order: usize, cap: usize },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
