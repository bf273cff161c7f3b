use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix must have positive dimensions and {expected} entries, got {rows}x{cols} with {actual}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("Kraus set is not trace preserving: max |sum A^dag A - I| = {defect:e}")]
    NotTracePreserving { defect: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("payoff table: {0}")]
    Table(String),

    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },

    #[error("evaluation failed at grid point {index}: {source}")]
    GridPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True when the error reports a broken numerical invariant rather than bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite(_) | Error::InvalidDensity(_) | Error::NotTracePreserving { .. } => {
                true
            }
            Error::GridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
