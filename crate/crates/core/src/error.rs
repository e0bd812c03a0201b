use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("solution has {got} bits but the instance has {expected} sets")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration over {m} sets exceeds the limit of {limit}")]
    OracleRefused { m: usize, limit: usize },

    #[error("subset closure needs {needed} sets, above the budget of {budget}")]
    ClosureTooLarge { needed: u128, budget: u128 },

    #[error(
        "withdrawal enumeration exceeded {budget} nodes in one iteration; \
         use a smaller k or fewer sets"
    )]
    EnumerationBudget { budget: u64 },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
