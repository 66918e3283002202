use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Location of a malformed token in a text input, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i32, strands: usize },
    #[error("need at least {needed} strands, got {got}")]
    TooFewStrands { needed: usize, got: usize },
    #[error("invalid half-twist [{low},{high}] on {strands} strands")]
    InvalidHalfTwist { strands: usize, low: usize, high: usize },
    #[error("factor exponent must be positive")]
    ZeroExponent,
    #[error("hurwitz move position {position} out of range for {len} factors")]
    MoveOutOfRange { position: usize, len: usize },
    #[error("duplicate lines {first} and {second}")]
    DuplicateLines { first: usize, second: usize },
    #[error("non-sweepable arrangement: {0}")]
    NonSweepable(String),
    #[error("parallel lines {first} and {second} meet only at infinity (degree deficit {deficit})")]
    ParallelLines { first: usize, second: usize, deficit: i64 },
    #[error("factor {index}: {message}")]
    Regeneration { index: usize, message: String },
    #[error("audit failure: degree {achieved} exceeds target {target}")]
    OverfullFactorization { achieved: i64, target: i64 },
    #[error("free generator x{index} out of range for {generators} generators")]
    FreeGeneratorOutOfRange { index: usize, generators: usize },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}
