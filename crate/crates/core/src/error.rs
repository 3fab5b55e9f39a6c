//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The rising factorial (0,0) has no value.
    #[error("pochhammer symbol (0,0) is undefined")]
    UndefinedPochhammer,

    #[error("pochhammer length must be non-negative, got {0}")]
    NegativePochhammerLength(i64),

    #[error("argument {x} is outside the domain {domain}")]
    OutOfDomain { x: f64, domain: String },

    /// The term cap was reached before the geometric tail bound engaged.
    #[error("no convergence detected within {terms} terms (|x| too close to the radius?)")]
    NoConvergenceDetected { terms: usize },

    #[error("coefficient {index} of `{name}` is not positive")]
    NonPositiveCoefficient { name: String, index: usize },

    #[error("denominator coefficient at index {index} is not positive")]
    NonPositiveDenominator { index: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("input must be positive, got {0}")]
    NonPositiveInput(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("evaluation failed: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
