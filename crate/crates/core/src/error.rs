use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} is not below the precision {precision}")]
    ExponentOutOfRange { exponent: i64, precision: i64 },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix is not nilpotent: rank of power {power} is stuck at {rank}")]
    NotNilpotent { power: usize, rank: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("partition {partition} is not admissible for {kind}")]
    Inadmissible { partition: String, kind: String },

    #[error("partition totals differ: {left} vs {right}")]
    TotalMismatch { left: usize, right: usize },

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("precision {precision} too small: need at least {required}")]
    InsufficientPrecision { precision: i64, required: i64 },

    #[error("degree {degree} is not above 2g-2 = {canonical} (h0 is only determined by degree in the nonspecial range)")]
    SpecialRange { degree: i64, canonical: i64 },

    #[error("genus {0} is not supported (need g >= 2)")]
    Genus(i64),

    #[error("observed Jordan types have no dominance maximum: {0}")]
    Incomparable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
