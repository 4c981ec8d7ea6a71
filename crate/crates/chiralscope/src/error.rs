use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("degree must be at least 1")]
    EmptyDomain,

    #[error("group of order {order} exceeds the enumeration limit {limit} (set CHIRALSCOPE_LIMIT to raise it)")]
    Capacity { order: String, limit: u64 },

    #[error("{what}: element is not a member of the group")]
    NotInGroup { what: &'static str },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
