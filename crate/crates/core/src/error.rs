use thiserror::Error;

/// Errors produced by the `trunc_bose` library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation dimension must be at least 2, got {0}")]
    Dimension(usize),

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("number state index {k} out of range for dimension {n}")]
    StateIndex { k: usize, n: usize },

    #[error("bisection for eigenvalue index {index} hit the {iterations}-iteration cap")]
    NonConvergence { index: usize, iterations: usize },

    #[error("off-diagonal entry {index} is zero; recurrence is undefined")]
    ZeroOffDiagonal { index: usize },

    #[error("eigenvector recurrence overflowed at component {index}")]
    RecurrenceOverflow { index: usize },

    #[error("Hermite root grid isolated {found} sign changes, expected {expected}")]
    OracleGrid { found: usize, expected: usize },

    #[error(
        "truncation at n={n} is insufficient: {detail}; increase the dimension"
    )]
    TruncationInsufficient { n: usize, detail: String },

    #[error("power-law fit needs at least {required} samples, got {got}")]
    TooFewSamples { required: usize, got: usize },

    #[error("power-law fit requires positive samples, got ({n}, {value})")]
    NonPositiveSample { n: f64, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
