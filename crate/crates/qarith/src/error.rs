use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("signature mismatch: {0} vs {1}")]
    SigMismatch(String, String),
    #[error("invalid signature: {0}")]
    BadSig(String),
    #[error("dagger needs an orthogonal involution")]
    NotOrthogonal,
    #[error("parse error: {0}")]
    Parse(String),
}
