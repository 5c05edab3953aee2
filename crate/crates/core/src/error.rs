use thiserror::Error;

use crate::algebra::CoefficientDomain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(CoefficientDomain, CoefficientDomain),

    #[error("operation requires a field, got {0}")]
    NotAField(CoefficientDomain),

    #[error("operation requires the integers, got {0}")]
    NotIntegers(CoefficientDomain),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value {0} is not integral")]
    NonIntegral(String),

    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("degree {degree} is below the maximum axiom degree {required}")]
    DegreeTooSmall { degree: usize, required: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}
