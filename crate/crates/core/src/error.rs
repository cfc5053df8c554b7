use thiserror::Error;

use crate::graycode::TransitionCounts;

/// Errors produced by domain-type constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bit width k must be in 1..={max}, got {got}")]
    BitWidth { got: u32, max: u32 },

    #[error("expected {expected} delta entries for k={k}, got {got}")]
    DeltaLength { k: u8, expected: usize, got: usize },

    #[error("row index {row} out of range 1..={k}")]
    RowOutOfRange { row: u32, k: u8 },

    #[error("delta sequence revisits a vertex at step {step}")]
    RevisitedVertex { step: usize },

    #[error("vertex {vertex:#b} does not fit in {k} bits")]
    VertexOutOfRange { vertex: u32, k: u8 },

    #[error("invalid gray code: {0}")]
    InvalidGrayCode(&'static str),

    #[error("bit width mismatch: {left} vs {right}")]
    BitWidthMismatch { left: u8, right: u8 },

    #[error("permutation images are not a bijection of 1..={k}")]
    NotABijection { k: u8 },

    #[error("{what} must be positive")]
    Zero { what: &'static str },

    #[error("binomial coefficient requires a <= j, got j={j}, a={a}")]
    BinomialDomain { j: u64, a: u64 },

    #[error("transition counts sum to {got}, expected j(2^k-1) = {expected}")]
    CountSumMismatch { expected: u64, got: u64 },

    #[error("transition count {entry} below the per-row minimum {min} for {j} codes")]
    CountBelowMinimum { entry: u16, min: u16, j: u32 },

    #[error("{what} = {got} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("constructed witness {0} is not strictly increasing")]
    WitnessNotMonotonic(TransitionCounts),

    #[error("witness construction requires {requirement}")]
    WitnessDomain { requirement: &'static str },

    #[error("scan found no odd transition-count vector; this indicates a bug")]
    EmptyScan,

    #[error("histogram cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
