//! Exact integer utilities: primality, budgeted factorization, valuations,
//! radicals, Legendre symbols and modular arithmetic.
//!
//! Factorization is trial division up to [`TRIAL_DIVISION_BOUND`] followed by
//! Brent's variant of Pollard rho. The rho loop is capped by an iteration
//! [`Budget`] so that results are reproducible; when the cap is hit the
//! unsplit part is returned as an explicit cofactor.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Primes below this bound are removed by trial division before rho splitting.
pub const TRIAL_DIVISION_BOUND: u64 = 10_000;

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Iteration cap on the rho splitting loop for one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000);

    pub fn iterations(self) -> u64 {
        self.0
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Prime factorization of a nonzero integer, possibly partial.
///
/// `sign · cofactor · ∏ p^e` always reproduces the input. Listed exponents are
/// exact: the cofactor is coprime to every listed prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigUint, u32)>,
    pub cofactor: BigUint,
    pub complete: bool,
    /// Listed primes above 2^64 whose primality rests on the BPSW test.
    pub probable: Vec<BigUint>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            sign: 1,
            factors: Vec::new(),
            cofactor: BigUint::one(),
            complete: true,
            probable: Vec::new(),
        }
    }

    pub fn value(&self) -> BigInt {
        let mut m = self.cofactor.clone();
        for (p, e) in &self.factors {
            m *= p.pow(*e);
        }
        let v = BigInt::from(m);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|(p, _)| p)
    }

    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Factorization of a product, given factorizations of its parts.
    ///
    /// Unfactored cofactors are multiplied together and any listed prime they
    /// still contain is moved into the prime list.
    pub fn product<I: IntoIterator<Item = Factorization>>(parts: I) -> Factorization {
        let mut sign = 1i8;
        let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();
        let mut leftovers = Vec::new();
        let mut probable = Vec::new();
        for part in parts {
            sign *= part.sign;
            for (p, e) in part.factors {
                *map.entry(p).or_insert(0) += e;
            }
            if !part.cofactor.is_one() {
                leftovers.push(part.cofactor);
            }
            probable.extend(part.probable);
        }
        let cofactor = clean_leftovers(&mut map, leftovers);
        probable.sort();
        probable.dedup();
        let complete = cofactor.is_one();
        Factorization {
            sign,
            factors: map.into_iter().collect(),
            cofactor,
            complete,
            probable,
        }
    }
}

/// Removes listed primes from unsplit composites; promotes leftovers that turn
/// out prime. Returns the product of what remains.
fn clean_leftovers(map: &mut BTreeMap<BigUint, u32>, mut leftovers: Vec<BigUint>) -> BigUint {
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        for mut c in leftovers {
            for (p, e) in map.iter_mut() {
                while (&c % p).is_zero() {
                    c /= p;
                    *e += 1;
                    changed = true;
                }
            }
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                *map.entry(c).or_insert(0) += 1;
                changed = true;
            } else {
                next.push(c);
            }
        }
        leftovers = next;
        if !changed || leftovers.is_empty() {
            break;
        }
    }
    leftovers.into_iter().fold(BigUint::one(), |acc, c| acc * c)
}

/// All primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_DIVISION_BOUND))
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES_U64 {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality test: deterministic below 2^64, Baillie–PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => bpsw(n),
    }
}

fn bpsw(n: &BigUint) -> bool {
    if n.is_even() {
        return false;
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime(n, &BigUint::from(2u32)) && strong_lucas_probable_prime(n)
}

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub(crate) fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    debug_assert!(n.is_odd());
    let mut n = n.clone();
    let mut a = a.mod_floor(&BigInt::from(n.clone())).to_biguint().unwrap();
    let mut result = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n_mod_8 = (&n % 8u32).to_u32().unwrap();
        if tz % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn jacobi_u64(a: u64, n: u64) -> i8 {
    let (mut a, mut n) = (a % n, n);
    let mut result = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    let nn = BigInt::from(n.clone());
    let mut d_abs = 5i64;
    let mut positive = true;
    let d = loop {
        let d = if positive { d_abs } else { -d_abs };
        let j = jacobi(&BigInt::from(d), n);
        if j == -1 {
            break d;
        }
        if j == 0 && BigInt::from(d_abs) != nn {
            return false;
        }
        d_abs += 2;
        positive = !positive;
    };
    let q = BigInt::from((1 - d) / 4);
    let dd = BigInt::from(d);
    let reduce = |x: BigInt| x.mod_floor(&nn);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &nn } else { x };
        (x >> 1u32).mod_floor(&nn)
    };

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = reduce(q.clone());
    for i in (0..k.bits() - 1).rev() {
        u = reduce(&u * &v);
        v = reduce(&v * &v - (&qk << 1u32));
        qk = reduce(&qk * &qk);
        if k.bit(i) {
            let u_next = half(&u + &v);
            let v_next = half(&dd * &u + &v);
            u = u_next;
            v = v_next;
            qk = reduce(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = reduce(&v * &v - (&qk << 1u32));
        if v.is_zero() {
            return true;
        }
        qk = reduce(&qk * &qk);
    }
    false
}

fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in primes_up_to(bits as u64) {
        let k = k as u32;
        let r = n.nth_root(k);
        if r > BigUint::one() && &r.pow(k) == n {
            return Some((r, k));
        }
    }
    None
}

/// One Brent rho attempt with polynomial `x² + c`. `None` when the budget
/// runs out or the attempt degenerates to `n`.
fn brent_rho(n: &BigUint, c: u64, remaining: &mut u64) -> Option<BigUint> {
    const BATCH: u64 = 128;
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            if *remaining == 0 {
                return None;
            }
            *remaining -= 1;
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n || g.is_zero() {
        None
    } else {
        Some(g)
    }
}

fn split(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    let mut c = 1u64;
    while *remaining > 0 {
        if let Some(d) = brent_rho(n, c, remaining) {
            return Some(d);
        }
        c += 1;
    }
    None
}

/// Factorizes a nonzero integer within `budget` rho iterations.
pub fn factorize(n: &BigInt, budget: Budget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();

    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        if let Some(v) = m.to_u64() {
            if p.saturating_mul(p) > v {
                break;
            }
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            map.insert(BigUint::from(p), e);
        }
    }

    let mut probable = Vec::new();
    let mut leftovers = Vec::new();
    let mut remaining = budget.0;
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            if c.bits() > 64 {
                probable.push(c.clone());
            }
            *map.entry(c).or_insert(0) += 1;
            continue;
        }
        if let Some((root, k)) = perfect_power(&c) {
            stack.extend(std::iter::repeat_n(root, k as usize));
            continue;
        }
        match split(&c, &mut remaining) {
            Some(d) => {
                let other = &c / &d;
                stack.push(d);
                stack.push(other);
            }
            None => leftovers.push(c),
        }
    }
    let cofactor = clean_leftovers(&mut map, leftovers);
    probable.sort();
    probable.dedup();
    let complete = cofactor.is_one();
    Ok(Factorization {
        sign,
        factors: map.into_iter().collect(),
        cofactor,
        complete,
        probable,
    })
}

/// Largest prime factor of `|n|`. When the factorization is incomplete the
/// returned prime is only a lower bound and `exact` is false.
pub fn largest_prime_factor(n: &BigInt, budget: Budget) -> Result<(BigUint, bool)> {
    if n.magnitude() <= &BigUint::one() {
        return Err(Error::Undefined("largest prime factor"));
    }
    let f = factorize(n, budget)?;
    match f.largest_prime() {
        Some(p) => Ok((p.clone(), f.complete)),
        None => Err(Error::IncompleteFactorization {
            cofactor: f.cofactor,
        }),
    }
}

/// Exponent of the prime `p` in `n`.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(BigUint::from(p)));
    }
    let m = n.magnitude();
    if p == 2 {
        return Ok(m.trailing_zeros().unwrap_or(0) as u32);
    }
    let mut m = m.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&BigUint::from(p));
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: &BigInt, budget: Budget) -> Result<BigUint> {
    let f = factorize(n, budget)?;
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.cofactor,
        });
    }
    Ok(f.primes().fold(BigUint::one(), |acc, p| acc * p))
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::EvenModulus(2));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(BigUint::from(p)));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    Ok(jacobi_u64(r, p))
}

/// `b^e mod m`; negative exponents go through the modular inverse of `b`.
pub fn mod_pow(b: &BigInt, e: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let base = if e < 0 {
        mod_inverse(b, m)?
    } else {
        b.mod_floor(&BigInt::from(m)).to_u64().unwrap()
    };
    Ok(pow_mod_u64(base, e.unsigned_abs(), m))
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let a_red = a.mod_floor(&BigInt::from(m)).to_i128().unwrap();
    let (mut old_r, mut r) = (a_red, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: m,
        });
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    fn lucas_lehmer(p: u32) -> bool {
        let m: u128 = (1u128 << p) - 1;
        let mut s: u128 = 4;
        for _ in 0..p - 2 {
            s = (s * s + m - 2) % m;
        }
        s == 0
    }

    #[test]
    fn primality_examples() {
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(23));
        assert!(lucas_lehmer(61));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 59) - 1));
        for n in 0..1_000_000u64 {
            assert_eq!(is_prime_u64(n), trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn big_primality_matches_known_values() {
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m107 = (BigUint::one() << 107u32) - 1u32;
        assert!(is_prime(&m89));
        assert!(is_prime(&m107));
        assert!(!is_prime(&(&m89 * &m107)));
        // 2^67 - 1 = 193707721 · 761838257287
        assert!(!is_prime(&((BigUint::one() << 67u32) - 1u32)));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&big(-24), Budget::DEFAULT).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(2u32.into(), 3), (3u32.into(), 1)]);
        assert!(f.complete);

        let f = factorize(&big(252), Budget::DEFAULT).unwrap();
        assert_eq!(
            f.factors,
            vec![(2u32.into(), 2), (3u32.into(), 2), (7u32.into(), 1)]
        );
        let f = factorize(&big(84480), Budget::DEFAULT).unwrap();
        assert_eq!(
            f.factors,
            vec![
                (2u32.into(), 9),
                (3u32.into(), 1),
                (5u32.into(), 1),
                (11u32.into(), 1)
            ]
        );
        assert_eq!(factorize(&big(0), Budget::DEFAULT), Err(Error::ZeroInput));
    }

    #[test]
    fn factorize_needs_rho_and_powers() {
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(998_244_353u64);
        let n = BigInt::from(&p * &p * &q * 7u32);
        let f = factorize(&n, Budget::DEFAULT).unwrap();
        assert!(f.complete);
        assert_eq!(f.exponent(&p), 2);
        assert_eq!(f.exponent(&q), 1);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn exhausted_budget_leaves_cofactor() {
        let p = (BigUint::one() << 61u32) - 1u32;
        let q = (BigUint::one() << 89u32) - 1u32;
        let n = BigInt::from(&p * &q * 12u32);
        let f = factorize(&n, Budget(1000)).unwrap();
        assert!(!f.complete);
        assert_eq!(f.cofactor, &p * &q);
        assert_eq!(f.value(), n);
        assert_eq!(f.exponent(&BigUint::from(2u32)), 2);
    }

    #[test]
    fn largest_prime_factor_examples() {
        assert_eq!(
            largest_prime_factor(&big(24), Budget::DEFAULT).unwrap(),
            (3u32.into(), true)
        );
        // -16744 = tau(7) = -2^3 · 7 · 13 · 23
        assert_eq!(
            largest_prime_factor(&big(-16744), Budget::DEFAULT).unwrap(),
            (23u32.into(), true)
        );
        assert_eq!(
            largest_prime_factor(&big(21288960), Budget::DEFAULT).unwrap(),
            (11u32.into(), true)
        );
        assert!(largest_prime_factor(&big(-1), Budget::DEFAULT).is_err());
    }

    #[test]
    fn valuation_radical_legendre_examples() {
        assert_eq!(p_adic_valuation(&big(-1472), 2), Ok(6));
        assert_eq!(p_adic_valuation(&big(252), 7), Ok(1));
        assert_eq!(p_adic_valuation(&big(5), 2), Ok(0));
        assert_eq!(p_adic_valuation(&big(0), 2), Err(Error::ZeroInput));

        assert_eq!(radical(&big(24), Budget::DEFAULT).unwrap(), 6u32.into());
        assert_eq!(radical(&big(252), Budget::DEFAULT).unwrap(), 42u32.into());
        assert_eq!(radical(&big(1), Budget::DEFAULT).unwrap(), 1u32.into());

        assert_eq!(legendre(&big(1), 7), Ok(1));
        assert_eq!(legendre(&big(2), 7), Ok(1));
        let squares_mod_23: Vec<i64> = (1..23).map(|x| x * x % 23).collect();
        let r = (-119i64).rem_euclid(23);
        assert!(!squares_mod_23.contains(&r));
        assert_eq!(legendre(&big(-119), 23), Ok(-1));
        assert_eq!(legendre(&big(3), 2), Err(Error::EvenModulus(2)));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(mod_pow(&big(2), 10, 1000), Ok(24));
        assert_eq!(mod_inverse(&big(3), 7), Ok(5));
        let inv = mod_pow(&big(4), -30, 125).unwrap();
        assert_eq!(
            inv,
            mod_pow(&big(mod_inverse(&big(4), 125).unwrap() as i64), 30, 125).unwrap()
        );
        assert_eq!(mul_mod(inv, mod_pow(&big(4), 30, 125).unwrap(), 125), 1);
        assert!(matches!(
            mod_inverse(&big(5), 125),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn factorize_reassembles_small_range() {
        for n in 2..=10_000i64 {
            let f = factorize(&big(n), Budget::DEFAULT).unwrap();
            assert!(f.complete);
            assert_eq!(f.value(), big(n));
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.primes().all(is_prime));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn legendre_agrees_with_euler(a in -100_000i64..100_000, idx in 1usize..300) {
            let p = small_primes()[idx];
            let euler = mod_pow(&big(a), ((p - 1) / 2) as i64, p).unwrap();
            let expected = match euler {
                0 => 0,
                1 => 1,
                e if e == p - 1 => -1,
                _ => unreachable!(),
            };
            prop_assert_eq!(legendre(&big(a), p).unwrap(), expected);
        }

        #[test]
        fn valuation_is_additive(m in 1i64..1_000_000, n in 1i64..1_000_000, idx in 0usize..10) {
            let p = small_primes()[idx];
            let lhs = p_adic_valuation(&(big(m) * big(n)), p).unwrap();
            let rhs = p_adic_valuation(&big(m), p).unwrap() + p_adic_valuation(&big(n), p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn exact_largest_prime_implies_complete(n in 2u64..u64::MAX) {
            let n = BigInt::from(n);
            let (_, exact) = largest_prime_factor(&n, Budget(2_000)).unwrap_or((BigUint::one(), false));
            let f = factorize(&n, Budget(2_000)).unwrap();
            prop_assert_eq!(f.value(), n);
            if exact {
                prop_assert!(f.complete);
            }
        }
    }
}
