use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps these onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: operands belong to different fields")]
    FieldMismatch,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("inner series has a nonzero constant term")]
    ConstantTermNonzero,
    #[error("evaluation point has valuation {0}, need at least 1")]
    OutsideConvergenceControl(i64),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("fixed point is not attracting (M = 1, v(lambda) = {0})")]
    NotAttracting(i64),
    #[error("the map is identically zero")]
    ZeroMap,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("characteristic of the field is not zero")]
    CharacteristicNotZero,
    #[error("coefficient outside the valuation ring: {0}")]
    NotIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precision(msg: impl Into<String>) -> Self {
        Error::PrecisionExhausted(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainViolation(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted(_) => 2,
            Error::NotAttracting(_)
            | Error::ZeroMap
            | Error::DomainViolation(_)
            | Error::OutsideConvergenceControl(_)
            | Error::CharacteristicNotZero
            | Error::NotIntegral(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
