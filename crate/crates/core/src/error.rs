use thiserror::Error;

/// Errors raised by the function algebra, rearrangements and norm evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("integral is not defined (both +inf and -inf contributions): {0}")]
    NotIntegrable(String),

    #[error("Cesaro transform undefined: {0}")]
    CesaroUndefined(String),

    #[error("function is not rearrangeable: distribution is infinite at every level")]
    NotRearrangeable,

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("function is not in the space: {0}")]
    NotInSpace(String),

    #[error("invalid set family: {0}")]
    InvalidFamily(String),

    #[error("method not applicable: {0}")]
    Inapplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
