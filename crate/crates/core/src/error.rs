//! Error type shared by the whole library, with a coarse category for
//! machine-readable reporting.

use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{0} is not 0 or a prime")]
    NotPrime(u64),
    #[error("operands live in different fields: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("exponent {exponent} exceeds precision {precision}")]
    ExponentExceedsPrecision { exponent: u64, precision: u64 },
    #[error("denominator {denominator} is divisible by the characteristic {characteristic}")]
    DenominatorDivisibleByCharacteristic { denominator: u64, characteristic: u64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by a series that is zero up to precision")]
    DivisionByZeroSeries,
    #[error("divisor order {divisor_order} exceeds dividend order {dividend_order}")]
    DivisionOrderMismatch { divisor_order: u64, dividend_order: u64 },
    #[error("square roots are not defined over characteristic 2")]
    SqrtCharacteristicTwo,
    #[error("constant term {0} is not a nonzero square in the field")]
    NotASquare(String),
    #[error("exponent {exponent} is not divisible by {nu}")]
    ExponentNotDivisible { exponent: u64, nu: u64 },
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("input is not normalized: gcd of achieved orders is {gcd}; compress exponents first")]
    NotNormalized { gcd: u64 },
    #[error("semigroup is not Arf")]
    NotArf,
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("invalid multiplicity sequence: {0}")]
    InvalidMultiplicitySequence(String),
    #[error("invalid character set: {0}")]
    InvalidCharacterSet(String),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),
    #[error("element {element} is not a member of the closure")]
    NotAClosureMember { element: u64 },
    #[error("level {level} is out of range for a chain with {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error("membership is indeterminate at precision {0}")]
    IndeterminateMembership(u64),
    #[error("maximum step count {0} exceeded")]
    MaxStepsExceeded(u64),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
}

/// Coarse error categories surfaced verbatim by the command line interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Syntax,
    InvalidInput,
    InsufficientPrecision,
    NotNormalized,
    NotArf,
    IndeterminateMembership,
    ResourceGuard,
}

impl ErrorCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCategory::Syntax => "syntax",
            ErrorCategory::InvalidInput => "invalid-input",
            ErrorCategory::InsufficientPrecision => "insufficient-precision",
            ErrorCategory::NotNormalized => "not-normalized",
            ErrorCategory::NotArf => "not-arf",
            ErrorCategory::IndeterminateMembership => "indeterminate-membership",
            ErrorCategory::ResourceGuard => "resource-guard",
        }
    }
}

impl Error {
    /// Each error maps to exactly one category.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Syntax { .. } => ErrorCategory::Syntax,
            Error::NotPrime(_)
            | Error::FieldMismatch(..)
            | Error::ExponentExceedsPrecision { .. }
            | Error::DenominatorDivisibleByCharacteristic { .. }
            | Error::ZeroDenominator
            | Error::DivisionByZeroSeries
            | Error::DivisionOrderMismatch { .. }
            | Error::SqrtCharacteristicTwo
            | Error::NotASquare(_)
            | Error::ExponentNotDivisible { .. }
            | Error::EmptyGenerators
            | Error::InvalidMultiplicitySequence(_)
            | Error::InvalidCharacterSet(_)
            | Error::InvalidBranch(_)
            | Error::NotAClosureMember { .. }
            | Error::LevelOutOfRange { .. } => ErrorCategory::InvalidInput,
            Error::InsufficientPrecision(_) => ErrorCategory::InsufficientPrecision,
            Error::NotNormalized { .. } => ErrorCategory::NotNormalized,
            Error::NotArf => ErrorCategory::NotArf,
            Error::IndeterminateMembership(_) => ErrorCategory::IndeterminateMembership,
            Error::MaxStepsExceeded(_) | Error::ResourceGuard(_) => ErrorCategory::ResourceGuard,
        }
    }
}
