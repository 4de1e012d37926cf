use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is undefined for this input")]
    Undefined(&'static str),
    #[error("factorization incomplete: unfactored cofactor {cofactor}")]
    IncompleteFactorization { cofactor: BigUint },
    #[error("modulus {0} must be an odd prime")]
    EvenModulus(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: BigInt, modulus: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("request of size {requested} exceeds the limit {limit}")]
    BudgetExceeded { requested: u64, limit: u64 },
    #[error("prime {prime} lies beyond the tau source limit {limit}")]
    PrimeOutOfRange { prime: BigUint, limit: u64 },
    #[error("tau({0}) = 0 would contradict Lehmer's conjecture")]
    LehmerViolation(u64),
    #[error(
        "lambda = {lambda} for p = {p} exceeds 5; tau(p) is inconsistent with the Deligne bound"
    )]
    LambdaOutOfRange { p: u64, lambda: u32 },
    #[error("{0} is not admissible here (it divides the Lucas parameter B)")]
    BadPrime(u64),
    #[error("rank of apparition of {ell} not found within {bound} terms")]
    RankNotFound { ell: u64, bound: u64 },
    #[error("symmetric reduction needs an even degree, got {0}")]
    OddDegree(u32),
    #[error("{what} = {value} outside the admissible range")]
    RangeError { what: &'static str, value: i64 },
    #[error("orbit elements are not distinct and nonzero")]
    CardinalityViolation,
    #[error("orbit stopped after {reached} of {requested} steps")]
    OrbitIncomplete { reached: usize, requested: usize },
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
