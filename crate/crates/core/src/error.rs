use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("gram matrix is not positive definite: leading principal minor of order {order} is {value}")]
    NotPositiveDefinite { order: usize, value: String },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("algebra failed validation:\n{0}")]
    Validation(String),

    #[error("algebra is not 2-step nilpotent")]
    NotTwoStepNilpotent,

    #[error("tensor is not trace-free")]
    NotTraceFree,

    #[error("tensor is not conformal Killing")]
    NotConformal,

    #[error("2-form is not closed: cyclic sum on ({0}, {1}, {2}) is {3}")]
    NotClosed(usize, usize, usize, String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("invalid parameters for {entry}: {reason}")]
    InvalidParams { entry: String, reason: String },

    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(String),

    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
