//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not a monic irreducible of the requested degree")]
    ReducibleModulus,
    #[error("field of size {0} exceeds the supported bound 2^20")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements of distinct fields mixed in one operation")]
    MixedFields,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("element is not a square")]
    NotASquare,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(u64),
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),
    #[error("polynomial is not self-reciprocal for the given parameter")]
    NotSelfReciprocal,
    #[error("polynomial has odd degree")]
    OddDegree,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("prime {prime} does not divide q-1={q_minus_1}")]
    RadConditionViolated { prime: u64, q_minus_1: u64 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
}
