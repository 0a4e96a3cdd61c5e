use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for a factor of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid group shape: {0}")]
    InvalidShape(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("zero vector has no support")]
    ZeroVector,
    #[error("the direction c must be non-zero")]
    ZeroDirection,
    #[error("empty weight set")]
    EmptySupport,
    #[error("degree underflow: {0}")]
    DegreeUnderflow(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("characteristic {p} too small: need p > {bound}")]
    CharacteristicTooSmall { p: u64, bound: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("method inapplicable: {0}")]
    Inapplicable(String),
    #[error("not a genuine character: {0}")]
    NotACharacter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
