use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("operation undefined on the zero vector")]
    ZeroVector,
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("vector is not decomposable (residual {0:e})")]
    NotDecomposable(f64),
    #[error("Newton iteration did not converge after {iterations} steps (|D| = {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("claim violated: {0}")]
    ClaimViolation(String),
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
