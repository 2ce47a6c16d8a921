use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element count {requested} exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("spectral sets are not separated at split {split}")]
    SeparationViolation { split: usize },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("malformed container: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
