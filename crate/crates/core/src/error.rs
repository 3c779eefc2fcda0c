use thiserror::Error;

use crate::poly::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UmbralError {
    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has the wrong constant term: {0}")]
    ConstantTerm(String),

    #[error("coefficient is not an invertible rational: {0}")]
    NotInvertible(String),

    #[error("first moment must be a nonzero rational, got {0}")]
    VanishingFirstMoment(String),

    #[error("indeterminate `{0}` is reserved here and may not appear in umbra moments")]
    VariableCollision(Var),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, UmbralError>;
