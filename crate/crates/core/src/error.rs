use thiserror::Error;

/// Errors produced by the operators, Krylov machinery and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    SolverFailure { iterations: usize, residual: f64 },

    #[error("unsupported solver method {method} for {operator}")]
    UnsupportedSolver {
        method: &'static str,
        operator: &'static str,
    },

    #[error("initial vector has zero norm")]
    ZeroVector,

    #[error("{what} = {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("norm {norm} exceeds the series oracle validity bound {bound}")]
    OracleNormTooLarge { norm: f64, bound: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("insufficient points for rate fit: {found} usable, need {needed}")]
    InsufficientPoints { found: usize, needed: usize },

    #[error("singular matrix in dense solve")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
