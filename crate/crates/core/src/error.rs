use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("interpolation grid is missing the value at {0:?}")]
    MissingGridPoint(Vec<usize>),

    #[error("duplicate interpolation node in variable {var}")]
    DuplicateNode { var: usize },

    #[error("grid for variable {var} has {got} nodes, need {need}")]
    GridShape { var: usize, got: usize, need: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("matrix is rank deficient (rank {rank} < {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },

    #[error("eigenspace has dimension {dim}, expected 1")]
    DegenerateKernel { dim: usize },

    #[error("transfer matrix does not preserve the link-pattern subspace")]
    StabilityViolation,

    #[error("interpolant is not homogeneous of degree {degree} within the per-variable bound")]
    HomogenizationMismatch { degree: u32 },

    #[error("polynomial division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("degenerate denominator (Schur function vanishes at the sample point)")]
    DegenerateDenominator,

    #[error("{what}: n = {n} exceeds the cap {cap}")]
    SizeCap { what: &'static str, n: usize, cap: usize },

    #[error("pole: {0}")]
    Pole(String),

    #[error("root finding did not converge")]
    RootFinding,

    #[error("invalid link pattern: {0}")]
    InvalidPattern(String),

    #[error("modular reconstruction failed after {primes} primes")]
    Reconstruction { primes: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
