use thiserror::Error;

pub type Result<T> = std::result::Result<T, DfntError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DfntError {
    #[error("invalid size {0}: transform size must be at least 1")]
    InvalidSize(usize),

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("dense size {size}x{size} exceeds the cap of {cap} entries")]
    SizeOverflow { size: usize, cap: usize },

    #[error("invalid fraction: denominator must be positive")]
    InvalidFraction,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires the modern variant")]
    UnsupportedVariant,
}
