use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("matrix is not Hermitian (residual {residual:e}, tolerance {tolerance:e})")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("method {method} requires a Hermitian matrix")]
    RequiresHermitian { method: &'static str },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("degree {0} must be even")]
    OddDegree(usize),

    #[error("degree must be at least {min}, got {d}")]
    DegreeTooSmall { d: usize, min: usize },

    #[error("degree {d} exceeds the limit {max} for this method")]
    DegreeTooLarge { d: usize, max: usize },

    #[error("{what} has size {size}, above the limit {limit}")]
    SizeGuard { what: &'static str, size: u128, limit: u128 },

    #[error("quadrature needs at least {min} nodes, got {nodes}")]
    TooFewNodes { nodes: usize, min: usize },

    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
