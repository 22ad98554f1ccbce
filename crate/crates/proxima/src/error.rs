//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by space queries and shape operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no complex named `{0}` is registered")]
    NotFound(String),
    #[error(
        "cell {cell} of complex `{complex}` references a face that is not a cell of the space"
    )]
    MissingFace { complex: String, cell: u32 },
    #[error("operation requires both complexes in the same space")]
    SpaceMismatch,
    #[error("vertex {0} does not lie on the cycle")]
    NotOnCycle(u32),
    #[error("cycle through vertex {0} carries no declared generator")]
    UncoveredCycle(u32),
    #[error("cycles are neither nesting nor intersecting")]
    NotNested,
    #[error("map has no entry for complex `{0}`")]
    NotTotal(String),
    #[error("representation was built over `{rep}`, not `{complex}`")]
    Mismatch { rep: String, complex: String },
    #[error("probe produces vectors of arity {0}; a scalar description is required")]
    ScalarRequired(usize),
    #[error("boundary region is empty")]
    EmptyBoundary,
    #[error("threshold must be positive, got {0}")]
    InvalidThreshold(f64),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Parse failures for the `.space` document format, each with its own code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("dangling reference at line {line}: {what}")]
    DanglingReference { line: usize, what: String },
    #[error("duplicate id at line {line}: {what}")]
    DuplicateId { line: usize, what: String },
    #[error("invalid cell at line {line}: {msg}")]
    InvalidCell { line: usize, msg: String },
}

impl ParseError {
    /// Stable machine-readable code for each failure class.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "E_SYNTAX",
            ParseError::DanglingReference { .. } => "E_DANGLING",
            ParseError::DuplicateId { .. } => "E_DUPLICATE",
            ParseError::InvalidCell { .. } => "E_INVALID_CELL",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
