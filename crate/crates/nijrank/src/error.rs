//! Crate-wide error type.

use thiserror::Error;

use crate::exterior::JacobiViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("algebra dimension {0} is odd; almost complex structures need an even dimension")]
    OddDimension(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("co-frame rows and their conjugates are linearly dependent")]
    SingularFrame,

    #[error("singular deformation: det P = 0 for Phi = {phi}")]
    SingularDeformation { phi: String },

    #[error("not an almost complex structure: {0}")]
    InvalidJ(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {0:?} (expected e.g. \"-1/2\" or \"1/2+1/3i\")")]
    ScalarSyntax(String),

    #[error("Jacobi identity fails: d(d e^{}) = {} != 0", .0.basis_index, .0.dd)]
    Jacobi(JacobiViolation),

    #[error("{0}")]
    Salamon(#[from] crate::salamon::ParseError),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("sampling failed to produce a valid structure after {0} retries")]
    SamplingExhausted(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
