//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("z-mode mismatch: {0}")]
    ZModeMismatch(String),

    #[error("constant term must be 1 for reciprocation, found {0}")]
    NonUnitConstant(String),

    #[error("constant term must be 0 for geometric expansion, found {0}")]
    NonZeroConstant(String),

    #[error("work budget exceeded for {what}: needs ~{needed}, budget {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("no closed form for this pattern class ({case}): {detail}")]
    UnsupportedClass { case: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
