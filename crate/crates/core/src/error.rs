use thiserror::Error;

/// Errors raised by the exact arithmetic, polynomial and certification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("Jacobian is singular at the current point")]
    SingularJacobian,
    #[error("square root of a negative rational")]
    NegativeInput,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial {index} has degree zero")]
    DegreeZeroPolynomial { index: usize },
    #[error("block structure arithmetic fails: {0}")]
    StructureArithmetic(String),
    #[error("point is not a certified approximate solution")]
    NotAnApproximateSolution,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
