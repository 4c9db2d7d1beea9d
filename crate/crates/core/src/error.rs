use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("{what} needs dimension {size}, above the index bound {bound}")]
    IndexOverflow { what: String, size: u128, bound: usize },
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeBound { degree: usize, max: usize },
    #[error("index ({row}, {col}) out of bounds for a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("axiom violation:\n{0}")]
    Axiom(ValidationReport),
    #[error("subspace is not contained in the ambient span")]
    NotContained,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
