//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Gf3Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation undefined for constant polynomials")]
    ConstantPolynomial,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("modulus must have degree at least 1")]
    InvalidModulus,

    #[error("degree {degree} exceeds the expansion cap {cap}; use witness mode")]
    DegreeTooLarge { degree: String, cap: u64 },

    #[error("polynomial is not irreducible")]
    NotIrreducible,

    #[error("polynomial is not primitive")]
    NotPrimitive,

    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    ModulusDegreeMismatch { expected: usize, got: String },

    #[error("extension degree m={m} outside supported range 1..={cap}")]
    ContextDegreeOutOfRange { m: usize, cap: usize },

    #[error("m={m} exceeds the Zech table cap {cap}")]
    ZechCapExceeded { m: usize, cap: usize },

    #[error("m={m} exceeds the field scan cap {cap}; use count_large or witness verification")]
    ScanCapExceeded { m: usize, cap: usize },

    #[error("code length {n} exceeds the minimum-weight oracle cap {cap}")]
    OracleCapExceeded { n: u128, cap: u64 },

    #[error("witness polynomial is reducible")]
    ReducibleWitness,

    #[error("exponent too large for explicit expansion and no witness supplied")]
    WitnessRequired,

    #[error("congruence has {count} solution classes, above the enumeration limit")]
    DegenerateCongruence { count: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Gf3Error>;
