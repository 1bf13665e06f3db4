use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvError {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("domain error: {0}")]
    Domain(String),
}
