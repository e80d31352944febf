use thiserror::Error;

/// Errors raised by the code library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("coordinate {index} out of range for length {length}")]
    IndexOutOfRange { index: usize, length: usize },

    #[error("enumeration of 2^{dim} words exceeds the cap of 2^{cap_log2}")]
    EnumerationCap { dim: usize, cap_log2: usize },

    #[error("value {value:#x} does not fit in {length} coordinates")]
    ValueOutOfRange { value: u64, length: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("checkpoint corrupt: {0}")]
    Checkpoint(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
