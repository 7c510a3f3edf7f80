use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point outside the domain: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gauge bracket failure: {0}")]
    BracketFailure(String),

    #[error("function vanishes on the continuation path (|g| = {modulus:e} at s = {s})")]
    ZeroOnPath { s: f64, modulus: f64 },

    #[error("no preimage found inside the ball")]
    NotFound,

    #[error("distinct preimages found ({distance:e} apart): map is not univalent")]
    Ambiguous { distance: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
