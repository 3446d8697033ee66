use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable count {0} outside supported range 1..=16")]
    UnsupportedDimension(usize),
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset mask {mask:#b} has bits outside the ground set of size {n}")]
    SubsetOutOfRange { mask: u32, n: usize },
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),
    #[error("coefficient sum is zero; cannot normalize")]
    ZeroSum,
    #[error("negative coefficient {value} at subset {subset}")]
    NegativeCoefficient { subset: String, value: String },
    #[error("point coordinate {index} = {value} is not a finite positive number")]
    NonPositiveCoordinate { index: usize, value: f64 },
    #[error("polynomial value {0} is not positive at the evaluation point")]
    NonPositiveValue(f64),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
