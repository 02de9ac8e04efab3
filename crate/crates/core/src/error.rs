use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u64),

    #[error("field size {p}^{degree} exceeds the configured cap of {cap}")]
    SizeCapExceeded { p: u32, degree: u32, cap: u64 },

    #[error("no primitive polynomial of degree {degree} over F_{p} found")]
    NoPrimitiveFound { p: u32, degree: u32 },

    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),

    #[error("element does not belong to the field of size {size}")]
    FieldMismatch { size: u64 },

    #[error("element is not a unit")]
    NotAUnit,

    #[error("polynomial is not primitive over F_{p}")]
    NotPrimitive { p: u32 },

    #[error("Frobenius step {0} is not a power of the characteristic")]
    InvalidStep(u64),

    #[error("character sum did not reduce to an integer: {0}")]
    NotAnInteger(String),

    #[error("e = {e} does not divide Q - 1 = {q_minus_1}")]
    BadDivisor { e: u64, q_minus_1: u64 },

    #[error("bad subspace: {0}")]
    BadSubspace(String),

    #[error("e does not satisfy condition (*): gcd({e}, (Q-1)/(q-1)) != 1")]
    StarViolated { e: u64 },

    #[error("enumeration cap exceeded: {0}")]
    EnumerationCapExceeded(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
