use thiserror::Error;

use crate::algebra::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: ({0}) vs ({1})")]
    ShapeMismatch(String, String),

    #[error("variable mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: Var, found: Var },

    #[error("non-unit divisor: constant term is zero")]
    NonUnitDivisor,

    #[error("non-square constant term: {0}")]
    NonSquareConstant(String),

    #[error("composition requires an inner series with zero constant term (found {0})")]
    NonZeroInnerConstant(String),

    #[error("insufficient truncation order: {0}")]
    InsufficientOrder(String),

    #[error("coefficient index ({i},{j}) outside grid ({ord1},{ord2})")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        ord1: usize,
        ord2: usize,
    },

    #[error("exhaustive enumeration bound exceeded: nmax={nmax} > bound={bound}")]
    BoundExceeded { nmax: usize, bound: usize },

    #[error("malformed tree serialization at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
