use thiserror::Error;

use crate::blade::Blade;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("signature ({p},{q}) is outside 1 <= n <= {max}")]
    DimensionOutOfRange { p: u32, q: u32, max: u32 },

    #[error("operands live in different algebras")]
    AlgebraMismatch,

    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("anticommutation relation fails for pair ({a},{b}), residual {residual:e}")]
    RelationViolation { a: usize, b: usize, residual: f64 },

    #[error("volume element matches none of ±e^(1..n), ±e, ±ie")]
    UnclassifiableVolume,

    #[error("operation requires odd dimension")]
    OddDimensionRequired,

    #[error("operation requires even dimension")]
    EvenDimensionRequired,

    #[error("multi-index {0} is not admissible here")]
    InadmissibleIndex(Blade),

    #[error("signature condition p-q ≡ {required} mod 4 not met")]
    SignatureMismatch { required: u32 },

    #[error("transform requires a complex field")]
    FieldMismatch,

    #[error("no candidate produced a usable intertwiner")]
    NoCandidateFound,

    #[error("intertwiner verification failed, residual {residual:e}")]
    VerificationFailed { residual: f64 },

    #[error("central factor matches no admissible case")]
    UnclassifiableCase,

    #[error("case {case} is not admissible: {reason}")]
    Admissibility { case: u8, reason: String },

    #[error("{0}")]
    Format(String),
}

impl Error {
    /// Prefixes a format error with the location it came from.
    pub fn at(self, location: impl std::fmt::Display) -> Self {
        match self {
            Error::Format(msg) => Error::Format(format!("{location}: {msg}")),
            other => other,
        }
    }
}
