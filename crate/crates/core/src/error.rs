//! Error type shared by all modules of the crate.

/// Errors raised by the polynomial kernel and the summability pipelines.
///
/// Variants suffixed `At` carry the index of the offending entry when an
/// operation takes a tuple of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("input at index {0} must be nonzero")]
    ZeroInputAt(usize),
    #[error("polynomial degree must be at least 2")]
    DegreeTooSmall,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational function must be proper")]
    NotProper,
    #[error("rational function at index {0} must be proper")]
    NotProperAt(usize),
    #[error("denominator must be squarefree")]
    NotSquarefree,
    #[error("denominator at index {0} must be squarefree")]
    NotSquarefreeAt(usize),
    #[error("partial fraction factors must be pairwise coprime")]
    FactorsNotCoprime,
    #[error("product of the factors must equal the denominator")]
    ProductMismatch,
    #[error("denominator must be non-constant")]
    ConstantDenominator,
    #[error("input has a nonzero polynomial part")]
    NonzeroPolynomialPart,
    #[error("input has a non-integer residue")]
    NonIntegerResidues,
    #[error("epsilon witness did not simplify to a constant")]
    NonConstantEpsilon,
    #[error("epsilon values must be nonzero")]
    ZeroEpsilon,
    #[error("factorization exceeds the trial division bound {0}")]
    FactorBoundExceeded(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for each error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZeroPoly => "division_by_zero_poly",
            Error::BothZero => "both_zero",
            Error::ZeroInput | Error::ZeroInputAt(_) => "zero_input",
            Error::DegreeTooSmall => "degree_too_small",
            Error::ZeroDenominator => "zero_denominator",
            Error::NotProper | Error::NotProperAt(_) => "not_proper",
            Error::NotSquarefree | Error::NotSquarefreeAt(_) => "not_squarefree",
            Error::FactorsNotCoprime => "factors_not_coprime",
            Error::ProductMismatch => "product_mismatch",
            Error::ConstantDenominator => "constant_denominator",
            Error::NonzeroPolynomialPart => "nonzero_polynomial_part",
            Error::NonIntegerResidues => "non_integer_residues",
            Error::NonConstantEpsilon => "non_constant_epsilon",
            Error::ZeroEpsilon => "zero_epsilon",
            Error::FactorBoundExceeded(_) => "factor_bound_exceeded",
            Error::Internal(_) => "internal",
        }
    }

    /// True for errors that indicate a bug in this crate rather than a
    /// violated precondition.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NonConstantEpsilon | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
