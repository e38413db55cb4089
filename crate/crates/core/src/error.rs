//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// The grid cannot resolve the requested region or step.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    /// The grid exceeds a documented cost guard (e.g. O(N^2) routines).
    #[error("grid too large: {0}")]
    GridTooLarge(String),

    /// Wavelet level bookkeeping failed (e.g. coarsest level >= finest).
    #[error("level underflow: {0}")]
    LevelUnderflow(String),

    /// Vanishing-moment order outside the supported range.
    #[error("unsupported vanishing moments m={0}; supported range is 1..=10")]
    UnsupportedMoments(usize),

    /// The (p, q) pair is not covered by a regularity table.
    #[error("parameters not covered by the table: {0}")]
    Uncovered(String),

    /// An empirical routine could not produce a value (empty family, zero error, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Linear-programming or least-squares subproblem failed.
    #[error("solver failure: {0}")]
    Solver(String),

    /// File format mismatch on load.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
