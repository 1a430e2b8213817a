use crate::rings::RingDescriptor;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingDescriptor, RingDescriptor),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid modulus {0}, must be at least 2")]
    InvalidModulus(u64),

    #[error("level {level} is below the minimum level {min}")]
    LevelTooSmall { level: usize, min: usize },

    #[error("determinant {0} is not 1")]
    NotSpecialLinear(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}
