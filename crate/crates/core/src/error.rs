use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("length {len} is not 4^n (expected a table over F2^(2n))")]
    NotPowerOfFour { len: usize },

    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("vectors are linearly dependent")]
    Dependent,

    #[error("generators do not commute")]
    NonCommuting,

    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),

    #[error("coefficient domain violation: {0}")]
    CoefficientDomain(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("empty set")]
    EmptySet,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("infeasible configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}
