//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroPolynomialDivisor,
    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("expected a non-constant polynomial")]
    ConstantPolynomial,
    #[error("expected a monic polynomial, got {0}")]
    NotMonic(String),
    #[error("cannot scale infinity by a non-positive factor")]
    InfiniteScale,
    #[error("value is infinite")]
    InfiniteValue,
    #[error("newton polygon needs at least one finite value")]
    AllValuesInfinite,
    #[error("newton polygon needs rank-1 values; {0} has a nonzero infinitesimal part")]
    InfinitesimalSlopeInput(String),
    #[error("reducible polynomial: rational root {0}")]
    Reducible(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("prime {0} is outside the supported range 2..=97")]
    UnsupportedPrime(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degree {got} exceeds the supported bound {bound}")]
    DegreeTooLarge { got: usize, bound: usize },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("elements belong to incompatible number fields")]
    IncompatibleFields,
    #[error("element is rational; no proper conjugates")]
    RationalElement,
    #[error("operation needs an element of degree {want} over Q, got degree {got}")]
    WrongElementDegree { want: usize, got: usize },
    #[error("no h with the required value found in the search family: {0}")]
    ExistenceNotFound(String),
    #[error("truncation falsified as a valuation; witness: {0}")]
    NotAValuation(String),
    #[error("minimality of the constructed key polynomial unresolved: {0}")]
    MinimalityUnresolved(String),
    #[error("syntax error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("unknown check name: {0}")]
    UnknownCheck(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
