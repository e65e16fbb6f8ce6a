use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KzError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid indices: {0}")]
    InvalidIndices(String),
    #[error("eigenvector check failed: {0}")]
    EigencheckFailed(String),
    #[error("recursion is obstructed at index {index}: right side has a cokernel component")]
    ResonanceObstruction { index: i64 },
    #[error("pole locations must be pairwise distinct")]
    DegeneratePoles,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("matrix is singular at the normalization point")]
    SingularAtPoint,
    #[error("base points must be pairwise distinct")]
    DegenerateBasePoints,
    #[error("center is a singular point of the equation")]
    SingularCenter,
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),
    #[error("block form mismatch: {0}")]
    BlockFormMismatch(String),
    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),
    #[error("asymptotic mismatch for column {k}, variable u{s}: {detail}")]
    AsymptoticMismatch { k: usize, s: usize, detail: String },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, KzError>;
