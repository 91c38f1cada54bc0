use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m must be odd ≥ 3 (got {0})")]
    InvalidModulus(i64),
    #[error("q not primitive: gcd({k}, {m}) ≠ 1")]
    NotPrimitive { m: u64, k: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero element")]
    ZeroElement,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("torsion parameters: {0}")]
    TorsionParameters(String),
    #[error("unsupported: x_1 not invertible on v (alpha1 = 0)")]
    UnsupportedAlpha1,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("dimension guard: dimension {dim} exceeds cap {cap}; raise the cap (--max-dim) to override")]
    DimensionGuard { dim: usize, cap: usize },
    #[error("instance too large for oracle: {0} vectors exceed the 10^6 guard")]
    OracleGuard(u128),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("image cardinality {0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
