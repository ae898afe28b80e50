use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least {min}, got {order}")]
    InvalidOrder { order: usize, min: usize },

    #[error("dimension must be at least 1")]
    InvalidDim,

    /// The dense pattern would need more than `2^34` bits.
    #[error("order {order} dimension {dim} pattern exceeds the storage guard of 2^34 entries")]
    TooLarge { order: usize, dim: usize },

    #[error("index component {value} out of range 1..={dim}")]
    IndexOutOfRange { value: usize, dim: usize },

    #[error("index has length {got}, expected {expected}")]
    IndexLength { got: usize, expected: usize },

    #[error("not a permutation of [{dim}]")]
    NotPermutation { dim: usize },

    #[error("canonical form enumerates n! relabelings; dimension {dim} exceeds the guard {max}")]
    CanonicalGuard { dim: usize, max: usize },

    #[error("dimension {dim} exceeds the support-set limit of {max}")]
    EngineDim { dim: usize, max: usize },

    #[error("expected {expected} support sets, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("malformed nested index: {0}")]
    MalformedIndex(String),

    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("certificate does not hold: {0}")]
    InvalidCertificate(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
