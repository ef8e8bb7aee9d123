use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZhuError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("state support exceeds stored weight cutoff {0}")]
    OutsideCutoff(String),
    #[error("insufficient cutoff: {0}")]
    InsufficientCutoff(String),
    #[error("truncation order too small: {0}")]
    TruncationTooSmall(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, ZhuError>;
