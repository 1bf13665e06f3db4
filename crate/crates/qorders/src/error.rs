use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("not an order: {0}")]
    NotOrder(String),
    #[error("degenerate lattice: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a covering vector: {0}")]
    NotCovering(String),
    #[error("consistency error: {0}")]
    Consistency(String),
}
