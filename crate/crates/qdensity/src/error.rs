use thiserror::Error;

#[derive(Debug, Error)]
pub enum DensityError {
    #[error("covolume mismatch: {0}")]
    Consistency(String),
    #[error("malformed census: {0}")]
    Malformed(String),
    #[error("unfittable: {0}")]
    Unfittable(String),
    #[error("domain: {0}")]
    Domain(String),
}
