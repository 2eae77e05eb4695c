use std::io;

use thiserror::Error;

use crate::schemes::FamilySpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("coefficient domains differ: {left} vs {right}")]
    DomainMismatch { left: String, right: String },

    #[error("operation requires a prime field, got {0}")]
    FieldRequired(String),

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("division by a polynomial whose leading coefficient is not a unit")]
    NonUnitDivisor,

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix has {got} entries, expected {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },

    #[error("both polynomials are constant")]
    BothConstant,

    #[error("zero polynomial has no Sylvester matrix")]
    ZeroPolynomial,

    #[error("degrees differ: {0} vs {1}")]
    UnequalDegrees(usize, usize),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bounds exceeded: {0}")]
    Bounds(String),

    #[error("guard rail exceeded: {work} coefficient tuples > {limit}")]
    GuardRail { work: u128, limit: u128 },

    #[error("negative power of L cannot be evaluated at L = 0")]
    NegativeExponentAtZero,

    #[error("class does not evaluate to an integer at L = {0}")]
    NonIntegral(String),

    #[error("cache integrity violation for {family} at p={p}: counts {first} and {second}")]
    CacheIntegrity {
        family: FamilySpec,
        p: u64,
        first: u64,
        second: u64,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("comparison verdict is false at d={0}")]
    TransferFailed(u64),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
