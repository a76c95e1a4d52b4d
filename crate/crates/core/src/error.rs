use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precision mismatch: {left} vs {right}")]
    PrecisionMismatch { left: usize, right: usize },

    #[error("coefficient index {index} out of range for precision {precision}")]
    IndexOutOfRange { index: usize, precision: usize },

    #[error("precision {given} too small: at least {required} required")]
    InvalidPrecision { given: usize, required: usize },

    #[error("substitution outside the ideal: substituted series has a nonzero constant term")]
    SubstitutionOutsideIdeal,

    #[error("not a unit: constant term is zero")]
    NotAUnit,

    #[error("not compositionally invertible: coefficient of x is zero")]
    NotCompositionallyInvertible,

    #[error("exp requires a series with zero constant term")]
    ConstantTermNotZero,

    #[error("log requires a series with constant term 1")]
    ConstantTermNotOne,

    #[error("sigma component must have zero constant term")]
    SigmaOutsideIdeal,

    #[error("element is not in the ideal (requires val(mu) >= 1 and val(sigma) >= 2)")]
    NotIdealElement,

    #[error("element is not in the Riordan group (requires mu(0) = 1 and <sigma, x> = 1)")]
    NotGroupElement,

    #[error("not star-invertible: representation has constant term != 1")]
    NotStarInvertible,

    #[error("base points differ: elements live in different Cauchy algebras")]
    BaseMismatch,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal: {0}")]
    InvalidRational(String),

    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
}

impl Error {
    /// True for malformed-input errors (CLI exit code 2); everything else is
    /// a domain error (exit code 3).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidRational(_))
    }
}
