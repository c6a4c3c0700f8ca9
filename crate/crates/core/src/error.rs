//! Error types shared across the crate.

use thiserror::Error;

use crate::algebra::Kernel;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("kernel mismatch: {0} vs {1}")]
    KernelMismatch(Kernel, Kernel),
    #[error("unsupported matrix dimension {0}")]
    UnsupportedDim(usize),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("non-finite entry at row {0}, column {1}")]
    NonFinite(usize, usize),
    #[error("bad Pauli index {0}, expected 1, 2 or 3")]
    BadPauliIndex(usize),
    #[error("control and target must be distinct wires")]
    SameWire,
    #[error("phase must have unit modulus")]
    NonUnitPhase,
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("the exact kernel cannot represent this value; use the float kernel")]
    ExactUnsupported,
    #[error("column {0} of the matrix is a superposition, not a basis state")]
    NotClassical(usize),
    #[error("gate has no textual form in the circuit language")]
    NotRepresentable,
    #[error("integer coefficient does not fit the JSON number range")]
    JsonRange,
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Syntax or validation error produced by the circuit DSL parser.
///
/// Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
