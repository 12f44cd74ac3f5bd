use thiserror::Error;

/// Errors raised while building, validating or evaluating transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("size {0} is not even")]
    OddSize(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("permutation is not a bijection: {0}")]
    NotBijective(String),

    #[error("sparse step row {row} is empty")]
    EmptyRow { row: usize },

    #[error("sparse step row {row}: {reason}")]
    BadEntry { row: usize, reason: String },

    #[error("input length {got} does not match expected {expected}")]
    Length { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
