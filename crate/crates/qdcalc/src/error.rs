use thiserror::Error;

/// Syntax error produced by [`crate::expr::parse`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Byte offset into the input text.
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

/// Unified error type for evaluation and operator application.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in `{expr}`: {reason}")]
    Domain { expr: String, reason: String },

    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite quotient value at offset h = {offset}")]
    NonFiniteSample { offset: f64 },

    #[error("evaluation point {x} outside radius {radius} around center {center}")]
    OutOfRadius { x: f64, center: f64, radius: f64 },

    #[error("degenerate grid: duplicate nodes ({0})")]
    DuplicateNodes(String),

    #[error("expression is not exactly evaluable: {0}")]
    NotExact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
