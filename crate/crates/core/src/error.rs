use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("direction is not a unit vector (norm {0})")]
    InvalidDirection(f64),

    #[error("invalid angle {name} = {value}")]
    InvalidAngle { name: &'static str, value: f64 },

    #[error("parameter {name} = {value} outside its valid range: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("invalid probability distribution: {0}")]
    Distribution(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("malformed game specification: {0}")]
    GameSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
