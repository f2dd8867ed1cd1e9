//! Crate-wide error type. Every fallible operation returns `Result<T>`;
//! preconditions stated in doc comments are enforced, not assumed.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {degree} needs {expected} coefficients, got {got}")]
    CoeffLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid interval: left endpoint exceeds right")]
    InvalidInterval,
    #[error("form is not squarefree")]
    NotSquarefree,
    #[error("the point (0 : 0) is not a projective point")]
    InvalidPoint,
    #[error("repeated point in support")]
    RepeatedPoint,
    #[error("quadratic x^2 + ({b})xy + ({c})y^2 has real roots")]
    IndefiniteQuadratic { b: String, c: String },
    #[error("repeated quadratic factor")]
    RepeatedQuadratic,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pencil generators are linearly dependent")]
    DependentPencil,
    #[error("subspace is zero-dimensional")]
    EmptySpace,
    #[error("contraction does not annihilate: {0}")]
    NotApolar(String),
    #[error("decomposition ill-conditioned: residual {residual} exceeds tolerance {tolerance}")]
    IllConditioned { residual: String, tolerance: String },
    #[error("witness hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("resampling budget exhausted: {0}")]
    ResampleExhausted(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
