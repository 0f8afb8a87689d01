use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("characteristic polynomial has non-integral coefficient at degree {degree}")]
    NonIntegral { degree: usize },

    #[error("subspace is not invariant under the operator")]
    NonInvariant,

    #[error("unsupported character: {0}")]
    UnsupportedCharacter(String),

    #[error("weight {0} is below 2")]
    WeightTooSmall(u32),

    #[error("p = {p} divides the level N = {level}; only p not dividing N is supported")]
    PrimeDividesLevel { p: u64, level: u64 },

    #[error("level {0} is not 1, 4 or a prime")]
    UnsupportedLevel(u64),

    #[error("q-expansion precision {have} too small, need at least {need}")]
    InsufficientPrecision { have: usize, need: usize },

    #[error("divisibility violated: {0}")]
    DivisibilityViolation(String),

    #[error("degree bound violated: {0}")]
    BoundViolation(String),

    #[error("time budget exhausted")]
    BudgetExhausted,

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that indicate a broken internal invariant rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegral { .. }
                | Error::NonInvariant
                | Error::DivisibilityViolation(_)
                | Error::BoundViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
