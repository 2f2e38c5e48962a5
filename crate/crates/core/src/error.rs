use thiserror::Error;

use crate::semiring::SemiringKind;
use crate::tq::Time;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the algebra and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value {value} is not in the {kind} domain")]
    InvalidValue { kind: SemiringKind, value: String },

    #[error("closure requires an absorptive semiring, {0} is not")]
    UnsupportedClosure(SemiringKind),

    #[error("malformed temporal quantity: {0}")]
    MalformedQuantity(String),

    #[error("division by zero on [{start}, {finish})")]
    DivisionByZero { start: Time, finish: Time },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("semiring mismatch: expected {expected}, found {found}")]
    SemiringMismatch {
        expected: SemiringKind,
        found: SemiringKind,
    },

    #[error("arithmetic overflow in geodesic count")]
    Overflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable category, used in CLI diagnostics.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidValue { .. } => "invalid-value",
            Error::UnsupportedClosure(_) => "unsupported-closure",
            Error::MalformedQuantity(_) => "malformed-quantity",
            Error::DivisionByZero { .. } => "division-by-zero",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::SemiringMismatch { .. } => "semiring-mismatch",
            Error::Overflow => "overflow",
            Error::InvalidInput(_) => "invalid-input",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
