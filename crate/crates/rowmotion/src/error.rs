use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for a poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("malformed poset: {0}")]
    MalformedPoset(String),
    #[error("not an order ideal")]
    NotAnIdeal,
    #[error("not an antichain")]
    NotAnAntichain,
    #[error("poset is not ranked")]
    NotRanked,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("coordinate ({0}, {1}) is not in the poset")]
    CoordinateOutsidePoset(i32, i32),
    #[error("{0}")]
    Mismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource cap exceeded: {what} exceeds {limit}")]
    ResourceCap { what: String, limit: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
