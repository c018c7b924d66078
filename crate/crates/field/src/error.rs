use crate::grid::Grid1D;
use thiserror::Error;

/// Errors produced by grid construction, spectral operations and field I/O.
#[derive(Debug, Error)]
pub enum FieldError {
    #[error("invalid grid: {reason} (points = {points}, length = {length})")]
    InvalidGrid {
        points: usize,
        length: f64,
        reason: &'static str,
    },

    #[error("grid mismatch: {left:?} vs {right:?}")]
    GridMismatch { left: Grid1D, right: Grid1D },

    #[error("unsupported derivative order {order}: must be between 1 and 4")]
    UnsupportedDerivativeOrder { order: usize },

    #[error("unsupported Sobolev index {s}: must be at most 8")]
    UnsupportedSobolevIndex { s: usize },

    #[error("cannot resample from {from} to {to} points: {reason}")]
    IncompatibleResolution {
        from: usize,
        to: usize,
        reason: &'static str,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed field file {path}, line {line}: {reason}")]
    MalformedFile {
        path: String,
        line: usize,
        reason: String,
    },
}
