//! Error type shared by all library operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("exponent {exponent} is not allowed: terms must be negative powers of z")]
    NonNegativeExponent { exponent: String },

    #[error("the zero polynomial is not valid here: {context}")]
    ZeroPolynomial { context: &'static str },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by a non-unit series (constant term is zero or not invertible)")]
    NonUnitDivision,

    #[error("invalid series composition: inner series must have zero constant term")]
    InvalidComposition,

    #[error("empty region: no accepted sample in {proposals} proposals")]
    EmptyRegion { proposals: u64 },

    #[error("degenerate sample spread: {0}")]
    DegenerateSamples(String),

    #[error("model schema error: {0}")]
    Schema(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
