use qinversive::InvError;
use qorders::OrderError;
use qpacking::PackError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ForbiddenError {
    #[error("domain error: {0}")]
    Domain(String),
    /// No catalog ball applies (for instance a norm-Euclidean order, or
    /// nrm(u) <= 3).
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Pack(#[from] PackError),
    #[error(transparent)]
    Inv(#[from] InvError),
}
