use thiserror::Error;

use crate::coeff::CoeffError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ordering not t-local")]
    OrderingNotTLocal,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("{0} of the zero element is undefined")]
    ZeroInput(&'static str),
    #[error("not a division: {0}")]
    NotADivision(String),
    #[error("generators failed the standard basis check")]
    NotStandardBasis,
    #[error("cannot eliminate local variables")]
    CannotEliminateLocal,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no fixed point after {0} iterations")]
    IterationLimit(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
