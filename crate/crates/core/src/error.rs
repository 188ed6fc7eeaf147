use thiserror::Error;

/// Failures of the exact arithmetic kernel and of the formula pipelines built on it.
///
/// None of these fire for valid inputs; each one points at a transcription or
/// assembly bug and carries enough context to locate it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("inexact division: ({numerator}) / ({divisor}) leaves {detail}")]
    InexactDivision {
        numerator: String,
        divisor: String,
        detail: String,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("not a polynomial: reduced denominator is {denominator}")]
    NotPolynomial { denominator: String },

    #[error(
        "negative power of x survives normalization in the coefficient of {monomial}: {residue}"
    )]
    NegativePowerResidue { monomial: String, residue: String },

    #[error("atom {0} has no declared Poincaré partner")]
    UnknownAtom(String),

    #[error("genus {0} outside the supported domain (g >= 2)")]
    GenusOutOfRange(u32),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("cannot collect expression: {0}")]
    Unsupported(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
