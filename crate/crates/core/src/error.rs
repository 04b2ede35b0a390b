use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has degree {found}, expected at least {min}")]
    DegreeTooSmall { found: isize, min: usize },

    #[error("matrix entry {value} at ({row}, {col}) is outside the allowed range {allowed}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: String,
        allowed: String,
    },

    #[error("characteristic polynomial is not in the coefficient set: {0}")]
    NotInCoefficientSet(#[from] crate::bijection::CoefficientError),

    #[error("fewer than two distinct real roots")]
    TooFewRoots,

    #[error("gap undecidable before the precision cap 2^{cap}")]
    PrecisionCap { cap: i64 },

    #[error("enumeration size {size} exceeds the cap {cap}")]
    EnumerationCap { size: String, cap: u64 },

    #[error("matrix dimension {dim} exceeds the limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
