//! Normalized Lucas sequences attached to primes.
//!
//! For a prime `p` the values τ(p^a) are a shifted Lucas sequence with roots
//! of `x² − τ(p)x + p¹¹`. Dividing the roots by `p^λ`, where `p^λ = gcd(τ(p),
//! p¹¹)`, gives coprime parameters `A = τ(p)/p^λ`, `B = p^{11−2λ}` and
//!
//! ```text
//! τ(p^a) = p^{λa} · u(a+1),   u(0) = 0, u(1) = 1, u(m+2) = A·u(m+1) − B·u(m).
//! ```
//!
//! Divisibility questions about `u` (ranks of apparition, odd-exponent
//! indices, primitive divisors) are answered with modular arithmetic so that
//! the terms never have to be expanded in full.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factorize, is_prime, is_prime_u64, legendre, mul_mod, p_adic_valuation, primes_up_to, Budget,
};
use crate::tau::{p_pow_11, TauSource};
use crate::{Error, Result};

/// Per-prime normalized Lucas data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasParams {
    pub p: u64,
    pub lambda: u32,
    /// `τ(p)/p^λ`
    pub a: BigInt,
    /// `p^{11−2λ}`
    pub b: BigInt,
    /// `A² − 4B`
    pub disc: BigInt,
}

impl LucasParams {
    /// τ(p) recovered as `p^λ·A`.
    pub fn tau_p(&self) -> BigInt {
        &self.a * BigInt::from(self.p).pow(self.lambda)
    }
}

pub fn lucas_params(p: u64, tau_p: &BigInt) -> Result<LucasParams> {
    if tau_p.is_zero() {
        return Err(Error::LehmerViolation(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(BigUint::from(p)));
    }
    let lambda = p_adic_valuation(tau_p, p)?.min(11);
    if lambda > 5 {
        return Err(Error::LambdaOutOfRange { p, lambda });
    }
    let a = tau_p / BigInt::from(p).pow(lambda);
    let b = BigInt::from(p).pow(11 - 2 * lambda);
    let disc = &a * &a - &b * 4;
    Ok(LucasParams {
        p,
        lambda,
        a,
        b,
        disc,
    })
}

/// `u(m)` exactly.
pub fn lucas_u(params: &LucasParams, m: u64) -> BigInt {
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &params.a * &cur - &params.b * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `u(m) mod modulus` by powering the companion matrix.
pub fn lucas_u_mod(params: &LucasParams, m: u64, modulus: &BigUint) -> BigUint {
    if modulus.is_one() {
        return BigUint::zero();
    }
    let n = BigInt::from(modulus.clone());
    let red = |x: &BigInt| x.mod_floor(&n).to_biguint().unwrap();
    let a = red(&params.a);
    let neg_b = red(&-&params.b);
    let mul = |x: &[BigUint; 4], y: &[BigUint; 4]| -> [BigUint; 4] {
        [
            (&x[0] * &y[0] + &x[1] * &y[2]) % modulus,
            (&x[0] * &y[1] + &x[1] * &y[3]) % modulus,
            (&x[2] * &y[0] + &x[3] * &y[2]) % modulus,
            (&x[2] * &y[1] + &x[3] * &y[3]) % modulus,
        ]
    };
    let mut result = [
        BigUint::one(),
        BigUint::zero(),
        BigUint::zero(),
        BigUint::one(),
    ];
    let mut base = [a, neg_b, BigUint::one(), BigUint::zero()];
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    // [u(m+1), u(m)] = M^m · [1, 0]
    result[2].clone()
}

/// Splits τ(p^a) as `(λa, u(a+1))`.
pub fn tau_decompose<S: TauSource + ?Sized>(p: u64, a: u32, src: &S) -> Result<(u64, BigInt)> {
    let params = lucas_params(p, &src.tau_prime(p)?)?;
    Ok((
        params.lambda as u64 * a as u64,
        lucas_u(&params, a as u64 + 1),
    ))
}

/// Closed forms for `(τ(p²), τ(p³), τ(p⁵))`.
pub fn small_index_identities(p: u64, tau_p: &BigInt) -> (BigInt, BigInt, BigInt) {
    let p11 = p_pow_11(&BigUint::from(p));
    let t2 = tau_p * tau_p;
    let second = &t2 - &p11;
    let third = tau_p * (&t2 - &p11 * 2);
    let fifth = tau_p * (&t2 - &p11) * (&t2 - &p11 * 3);
    (second, third, fifth)
}

/// Order of `α/β` when it is a root of unity, from the value of `τ(p)²/p¹¹`.
pub fn ratio_root_of_unity_order(params: &LucasParams) -> Option<u8> {
    let tau_p = params.tau_p();
    let t2 = &tau_p * &tau_p;
    let p11 = p_pow_11(&BigUint::from(params.p));
    [(4, 1), (0, 2), (1, 3), (2, 4), (3, 6)]
        .into_iter()
        .find(|&(k, _)| t2 == &p11 * k)
        .map(|(_, order)| order)
}

/// Least `k ≤ bound` with `ℓ | u(k)`; the bound defaults to `ℓ² + 1`.
pub fn rank_of_apparition(
    params: &LucasParams,
    ell: u64,
    search_bound: Option<u64>,
) -> Result<Option<u64>> {
    if ell == params.p {
        return Err(Error::BadPrime(ell));
    }
    if ell < 2 {
        return Err(Error::NotPrime(BigUint::from(ell)));
    }
    let bound = search_bound.unwrap_or_else(|| ell.saturating_mul(ell).saturating_add(1));
    let m = BigInt::from(ell);
    let a = params.a.mod_floor(&m).to_u64().unwrap();
    let b = params.b.mod_floor(&m).to_u64().unwrap();
    let (mut prev, mut cur) = (0u64, 1 % ell);
    for k in 1..=bound {
        if cur == 0 {
            return Ok(Some(k));
        }
        let next = (mul_mod(a, cur, ell) + ell - mul_mod(b, prev, ell)) % ell;
        prev = cur;
        cur = next;
    }
    Ok(None)
}

/// `ℓ − (disc/ℓ)`, which the rank of apparition of an odd prime `ℓ ∤ B`
/// divides.
pub fn legendre_index(params: &LucasParams, ell: u64) -> Result<u64> {
    let e = legendre(&params.disc, ell)?;
    Ok((ell as i64 - e as i64) as u64)
}

/// `ν_ℓ(u(m))`, found by reducing modulo growing powers of `ℓ`.
pub fn valuation_of_term(params: &LucasParams, m: u64, ell: u64) -> Result<u32> {
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    let ell_big = BigUint::from(ell);
    let mut k = 8u32;
    while k <= 4096 {
        let r = lucas_u_mod(params, m, &ell_big.pow(k));
        if !r.is_zero() {
            return p_adic_valuation(&BigInt::from(r), ell);
        }
        k *= 2;
    }
    Err(Error::Inconsistent(format!(
        "u({m}) divisible by {ell}^4096 for p = {}",
        params.p
    )))
}

/// The odd-exponent index of `ℓ` in `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddExponentIndex {
    /// Rank of apparition `b`.
    pub rank: u64,
    /// `ν_ℓ(u(b))`
    pub nu: u32,
    /// `b` if `ν` is odd, else `ℓ·b`.
    pub c: u64,
    /// `2⌊ν/2⌋ + 1`
    pub mu: u32,
    /// Whether `ν_ℓ(u(c)) = μ` was confirmed by direct evaluation.
    pub mu_confirmed: bool,
}

pub fn odd_exponent_index(
    params: &LucasParams,
    ell: u64,
    search_bound: Option<u64>,
) -> Result<OddExponentIndex> {
    let rank = rank_of_apparition(params, ell, search_bound)?.ok_or(Error::RankNotFound {
        ell,
        bound: search_bound.unwrap_or(ell.saturating_mul(ell).saturating_add(1)),
    })?;
    let nu = valuation_of_term(params, rank, ell)?;
    let c = if nu % 2 == 1 { rank } else { ell * rank };
    let mu = 2 * (nu / 2) + 1;
    let mu_confirmed = valuation_of_term(params, c, ell)? == mu;
    Ok(OddExponentIndex {
        rank,
        nu,
        c,
        mu,
        mu_confirmed,
    })
}

/// Primitive prime factors of `u(m)` found within a factoring budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveFactors {
    pub m: u64,
    pub term: BigInt,
    pub primes: Vec<BigUint>,
    pub complete: bool,
    /// Unfactored part of `u(m)`, 1 when complete.
    pub cofactor: BigUint,
}

pub fn primitive_prime_factors(
    params: &LucasParams,
    m: u64,
    budget: Budget,
) -> Result<PrimitiveFactors> {
    if m < 2 {
        return Err(Error::RangeError {
            what: "primitive divisor index",
            value: m as i64,
        });
    }
    let term = lucas_u(params, m);
    let f = factorize(&term, budget)?;
    let disc = params.disc.magnitude();
    let primes = f
        .primes()
        .filter(|q| !(disc % *q).is_zero())
        .filter(|q| !divides_earlier_term(params, q, m))
        .cloned()
        .collect();
    Ok(PrimitiveFactors {
        m,
        term,
        primes,
        complete: f.complete,
        cofactor: f.cofactor,
    })
}

fn divides_earlier_term(params: &LucasParams, q: &BigUint, m: u64) -> bool {
    let n = BigInt::from(q.clone());
    let a = params.a.mod_floor(&n);
    let b = params.b.mod_floor(&n);
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for _ in 1..m {
        if cur.is_zero() {
            return true;
        }
        let next = (&a * &cur - &b * &prev).mod_floor(&n);
        prev = cur;
        cur = next;
    }
    false
}

/// `∏ (1 − 1/(2c_q))` over primes `q ≤ q_max`, `q ≠ p_zero`, where `c_q` is
/// the odd-exponent index of `p_zero` in the sequence attached to `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicProduct {
    pub p_zero: u64,
    pub q_max: u64,
    pub value: BigRational,
    pub factors: usize,
    /// Primes whose rank was not found within the search bound.
    pub skipped: Vec<u64>,
}

impl HeuristicProduct {
    pub fn decimal(&self) -> String {
        format_significant(&self.value, 12)
    }
}

pub fn lehmer_heuristic_product<S: TauSource + ?Sized>(
    p_zero: u64,
    q_max: u64,
    src: &S,
) -> Result<HeuristicProduct> {
    if !is_prime(&BigUint::from(p_zero)) {
        return Err(Error::NotPrime(BigUint::from(p_zero)));
    }
    let mut value = BigRational::one();
    let mut factors = 0;
    let mut skipped = Vec::new();
    for q in primes_up_to(q_max) {
        if q == p_zero {
            continue;
        }
        let params = lucas_params(q, &src.tau_prime(q)?)?;
        match odd_exponent_index(&params, p_zero, None) {
            Ok(idx) => {
                let two_c = BigInt::from(2 * idx.c);
                value *= BigRational::new(&two_c - 1, two_c);
                factors += 1;
            }
            Err(Error::RankNotFound { .. }) => skipped.push(q),
            Err(e) => return Err(e),
        }
    }
    Ok(HeuristicProduct {
        p_zero,
        q_max,
        value,
        factors,
        skipped,
    })
}

/// Decimal rendering of a rational rounded to `sig` significant digits.
pub fn format_significant(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let x = x.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e ≤ x < 10^{e+1}
    let mut e: i64 = x.to_integer().to_string().len() as i64 - 1;
    if x < BigRational::one() {
        e = -1;
        let mut probe = x.clone() * &ten;
        while probe < BigRational::one() {
            probe *= &ten;
            e -= 1;
        }
    }
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        x * BigRational::from_integer(ten.pow(shift as u32))
    } else {
        x / BigRational::from_integer(ten.pow((-shift) as u32))
    };
    let mut digits = scaled.round().to_integer().to_string();
    let mut point = e + 1;
    if digits.len() > sig {
        digits.pop();
        point += 1;
    }
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
