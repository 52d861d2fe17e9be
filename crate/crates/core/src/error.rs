use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in 2..=97")]
    BadPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix {index} is not square or has the wrong size")]
    BadActionShape { index: usize },
    #[error("expected {expected} action matrices, got {got}")]
    WrongActionCount { expected: usize, got: usize },
    #[error("actions {i} and {j} do not commute")]
    NonCommuting { i: usize, j: usize },
    #[error("action {index} is not nilpotent of order p")]
    NotNilpotent { index: usize },
    #[error("group element {index} does not have order dividing p")]
    NotUnipotent { index: usize },
    #[error("modules live over different group algebras")]
    AlgebraMismatch,
    #[error("matrix does not commute with the module actions")]
    NotEquivariant,
    #[error("alpha must be a nonzero vector of length r")]
    BadAlpha,
    #[error("subset must be a nonempty set of indices in 1..=r")]
    BadSubset,
    #[error("window {got} is too small, need at least {min}")]
    WindowTooSmall { min: usize, got: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("internal computation error: {0}")]
    Internal(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
