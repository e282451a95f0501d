use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix market parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error("index ({row}, {col}) out of declared bounds {nrows}x{ncols}")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotSemidefinite(f64),

    #[error("dense size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("zero diagonal entry at index {0}")]
    ZeroDiagonal(usize),

    #[error("invalid relaxation parameter omega = {omega} for {kind}")]
    InvalidOmega { omega: f64, kind: String },

    #[error("invalid splitting configuration: {0}")]
    InvalidSplitting(String),

    #[error("right-hand side is not in the range of the matrix (relative defect {0:.3e})")]
    NotInRange(f64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("definiteness guard failed: {0}")]
    Inconsistent(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
