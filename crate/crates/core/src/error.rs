use thiserror::Error;

/// Errors raised by the transform and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("transform size must be positive")]
    ZeroSize,
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("length {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("factor index {0} is outside 0..=7")]
    FactorIndex(usize),
    #[error("invalid sparse factor {label}: {reason}")]
    InvalidFactor { label: String, reason: String },
    #[error("cannot fit a scale to an all-zero matrix")]
    ZeroMatrix,
    #[error("input contains a non-finite sample")]
    NonFinite,
    #[error("bin set is empty")]
    EmptyBins,
    #[error("bin {bin} is outside 0..{n}")]
    BinOutOfRange { bin: usize, n: usize },
    #[error("at least two replicates are needed to estimate a variance, got {0}")]
    TooFewReplicates(usize),
    #[error("noise variance must be positive and finite, got {0}")]
    InvalidNoiseVariance(f64),
    #[error("grid needs at least one point")]
    EmptyGrid,
    #[error("instrumented evaluation observed {0} multiplications")]
    MultiplicationObserved(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
