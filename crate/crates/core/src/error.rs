use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields")]
    MixedFields,
    #[error("{0} is not prime; only prime fields GF(p) are supported")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("left Leibniz identity fails on basis triple ({0}, {1}, {2})")]
    IdentityViolation(usize, usize, usize),
    #[error("lambda must be nonzero")]
    LambdaZero,
    #[error("matrix is not in the span of the derivation basis")]
    NotInSpan,
    #[error("search space of {size} candidates exceeds limit {limit}")]
    SearchSpaceTooLarge { size: String, limit: u64 },
    #[error("operation requires a finite prime field")]
    NotFiniteField,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
