//! The τ function: table builders, prime-power recurrence and multiplicative
//! evaluation.

mod extended;
mod ntt;
mod series;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, Budget, Factorization};
use crate::{Error, Result};

pub use extended::{tau_by_divisor_sums, ExtendedTau, EXTENDED_LIMIT_MAX};
pub use series::{build_tau_table, build_tau_table_naive, build_tau_table_with, NAIVE_LIMIT};

/// Exact coefficients τ(1), …, τ(N) of the Δ q-expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    coeffs: Vec<BigInt>,
}

impl TauTable {
    /// Wraps `coeffs[i] = τ(i+1)`. The first entry must be 1.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.first() {
            Some(c) if c.is_one() => Ok(TauTable { coeffs }),
            _ => Err(Error::Inconsistent(
                "a tau table must start with tau(1) = 1".into(),
            )),
        }
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// τ(n) for `1 ≤ n ≤ N`.
    pub fn get(&self, n: u64) -> Option<&BigInt> {
        if n == 0 {
            return None;
        }
        self.coeffs.get(usize::try_from(n - 1).ok()?)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncated(&self, n: usize) -> TauTable {
        TauTable {
            coeffs: self.coeffs[..n.clamp(1, self.coeffs.len())].to_vec(),
        }
    }
}

/// Anything that can produce τ(p) for primes up to some limit.
pub trait TauSource: Sync {
    fn tau_prime(&self, p: u64) -> Result<BigInt>;

    /// Largest prime this source can evaluate.
    fn prime_limit(&self) -> u64;

    /// τ(p) for a prime given as a big integer.
    fn tau_prime_big(&self, p: &BigUint) -> Result<BigInt> {
        match p.to_u64() {
            Some(v) if v <= self.prime_limit() => self.tau_prime(v),
            _ => Err(Error::PrimeOutOfRange {
                prime: p.clone(),
                limit: self.prime_limit(),
            }),
        }
    }
}

impl TauSource for TauTable {
    fn tau_prime(&self, p: u64) -> Result<BigInt> {
        self.get(p).cloned().ok_or(Error::PrimeOutOfRange {
            prime: BigUint::from(p),
            limit: self.order() as u64,
        })
    }

    fn prime_limit(&self) -> u64 {
        self.order() as u64
    }
}

impl<S: TauSource + ?Sized> TauSource for &S {
    fn tau_prime(&self, p: u64) -> Result<BigInt> {
        (**self).tau_prime(p)
    }

    fn prime_limit(&self) -> u64 {
        (**self).prime_limit()
    }
}

/// `p¹¹` as a big integer.
pub fn p_pow_11(p: &BigUint) -> BigInt {
    BigInt::from(p.pow(11))
}

/// τ(p^a) from τ(p) by `τ(p^{a+2}) = τ(p)τ(p^{a+1}) − p¹¹τ(p^a)`.
pub fn tau_prime_power(p: u64, a: u32, tau_p: &BigInt) -> BigInt {
    tau_prime_power_big(&BigUint::from(p), a, tau_p)
}

pub fn tau_prime_power_big(p: &BigUint, a: u32, tau_p: &BigInt) -> BigInt {
    let p11 = p_pow_11(p);
    let (mut prev, mut cur) = (BigInt::one(), tau_p.clone());
    if a == 0 {
        return prev;
    }
    for _ in 1..a {
        let next = tau_p * &cur - &p11 * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// τ(|m|) from a complete factorization of `m`.
pub fn tau_of_factorization<S: TauSource + ?Sized>(f: &Factorization, src: &S) -> Result<BigInt> {
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.cofactor.clone(),
        });
    }
    let mut acc = BigInt::one();
    for (p, e) in &f.factors {
        let tau_p = src.tau_prime_big(p)?;
        acc *= tau_prime_power_big(p, *e, &tau_p);
    }
    Ok(acc)
}

/// τ(n) for positive `n` by multiplicativity.
pub fn tau<S: TauSource + ?Sized>(n: &BigInt, src: &S, budget: Budget) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::Undefined("tau of a non-positive integer"));
    }
    let f = factorize(n, budget)?;
    tau_of_factorization(&f, src)
}

/// τ extended to all integers: τ(n) := τ(|n|) and τ(0) := 0.
pub fn tau_ext<S: TauSource + ?Sized>(n: &BigInt, src: &S, budget: Budget) -> Result<BigInt> {
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    tau(&n.abs(), src, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    fn table() -> TauTable {
        build_tau_table(10_000).unwrap()
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(
            tau_prime_power(3, 2, &BigInt::from(252)),
            BigInt::from(-113643)
        );
        assert_eq!(tau_prime_power(7, 0, &BigInt::from(-16744)), BigInt::one());
        assert_eq!(
            tau_prime_power(2, 3, &BigInt::from(-24)),
            BigInt::from(84480)
        );
    }

    #[test]
    fn multiplicative_evaluation_examples() {
        let t = build_tau_table(100).unwrap();
        let b = Budget::DEFAULT;
        assert_eq!(tau(&BigInt::from(6), &t, b).unwrap(), BigInt::from(-6048));
        assert_eq!(tau(&BigInt::from(1), &t, b).unwrap(), BigInt::one());
        assert_eq!(
            tau(&BigInt::from(24), &t, b).unwrap(),
            BigInt::from(21288960)
        );
        assert_eq!(
            tau_ext(&BigInt::from(-24), &t, b).unwrap(),
            BigInt::from(21288960)
        );
        assert_eq!(tau_ext(&BigInt::from(0), &t, b).unwrap(), BigInt::zero());
        assert_eq!(tau_ext(&BigInt::from(-1), &t, b).unwrap(), BigInt::one());
        assert!(matches!(
            tau(&BigInt::from(2 * 101), &t, b),
            Err(Error::PrimeOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluator_matches_table() {
        let t = table();
        for n in 1..=10_000u64 {
            let v = tau(&BigInt::from(n), &t, Budget::DEFAULT).unwrap();
            assert_eq!(&v, t.get(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn deligne_bound_for_primes() {
        let t = table();
        for p in primes_up_to(10_000) {
            let tp = t.get(p).unwrap();
            assert!(tp * tp < p_pow_11(&BigUint::from(p)) * 4, "p = {p}");
        }
    }

    #[test]
    fn table_accessors() {
        let t = build_tau_table(20).unwrap();
        assert_eq!(t.order(), 20);
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(21), None);
        assert_eq!(t.truncated(5).order(), 5);
        assert!(TauTable::from_coeffs(vec![BigInt::from(2)]).is_err());
    }
}
