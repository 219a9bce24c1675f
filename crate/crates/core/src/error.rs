use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("operands belong to different algebras")]
    MismatchedAlgebra,

    #[error("tensor length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("element is not in J^(tensor {n}): {detail}")]
    NotInJn { n: usize, detail: String },

    #[error("element is not in the domain of the reduced bar differential: {0}")]
    NotInDomain(String),

    #[error("map is not B^e-linear: {0}")]
    NotLinear(String),

    #[error("induced map does not vanish on the second kernel: {0}")]
    ObstructionNonzero(String),

    #[error("input has not passed validation: {0}")]
    NotValidated(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degree {requested} lies outside the computed window (max degree {window})")]
    WindowIncomplete { requested: i64, window: i64 },

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}
