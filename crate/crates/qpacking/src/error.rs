use qinversive::InvError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PackError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Inv(#[from] InvError),
}
