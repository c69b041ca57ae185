use thiserror::Error;

/// Errors raised by the algebra engine and the certificate builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("generator lists differ: [{left}] vs [{right}]")]
    GeneratorMismatch { left: String, right: String },

    #[error("coefficient rings differ: {left} vs {right}")]
    CoefMismatch { left: &'static str, right: &'static str },

    #[error("{0} is not 3-local: denominator divisible by 3")]
    NotThreeLocal(String),

    #[error("{0} is not invertible")]
    NotUnit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("foreign generator `{0}` in a polynomial that must only use {1}")]
    ForeignGenerator(String, String),

    #[error("precision underflow: result would have precision {0}")]
    PrecisionUnderflow(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("non-integral coefficient {0}")]
    NotIntegral(String),

    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),

    #[error("linear system is underdetermined: {0}")]
    Underdetermined(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = AlgError> = std::result::Result<T, E>;
