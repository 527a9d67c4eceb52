use crate::field::ArithmeticError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("incompatible boundary interfaces: {0}")]
    IncompatibleBoundary(String),
    #[error("ill-typed term: {0}")]
    TypeError(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
