use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed poset: {0}")]
    Poset(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid marking: {0}")]
    Marking(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
