//! τ(n) beyond the table via the divisor-sum convolution
//!
//! ```text
//! 756·τ(n) = 65·σ₁₁(n) + 691·σ₅(n) − 691·252·Σ_{k=1}^{n−1} σ₅(k)σ₅(n−k)
//! ```
//!
//! which costs O(n) word operations for a single coefficient. The sum is
//! accumulated exactly in a 320-bit integer; divisibility by 756 is checked
//! on every evaluation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{TauSource, TauTable};
use crate::arith::{factorize, Budget};
use crate::par::fold_chunks;
use crate::{Error, Parallelism, Result};

/// Above this `σ₅(k)` no longer fits in 128 bits.
pub const EXTENDED_LIMIT_MAX: u64 = 40_000_000;

/// A [`TauTable`] extended by on-demand convolution evaluation for primes up
/// to `limit`. Results are cached.
#[derive(Debug)]
pub struct ExtendedTau<'a> {
    table: &'a TauTable,
    limit: u64,
    mode: Parallelism,
    spf: Mutex<Arc<Vec<u32>>>,
    cache: Mutex<HashMap<u64, BigInt>>,
}

impl<'a> ExtendedTau<'a> {
    pub fn new(table: &'a TauTable, limit: u64) -> Self {
        ExtendedTau {
            table,
            limit: limit.clamp(
                table.order() as u64,
                EXTENDED_LIMIT_MAX.max(table.order() as u64),
            ),
            mode: Parallelism::default(),
            spf: Mutex::new(Arc::new(Vec::new())),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_parallelism(mut self, mode: Parallelism) -> Self {
        self.mode = mode;
        self
    }

    pub fn table(&self) -> &TauTable {
        self.table
    }

    fn sieve_for(&self, n: u64) -> Arc<Vec<u32>> {
        let mut guard = self.spf.lock().unwrap();
        if (guard.len() as u64) < n {
            let size = n.max(2 * guard.len() as u64).min(self.limit + 1);
            *guard = Arc::new(smallest_prime_factors(size as usize));
        }
        Arc::clone(&guard)
    }
}

impl TauSource for ExtendedTau<'_> {
    fn tau_prime(&self, p: u64) -> Result<BigInt> {
        if let Some(v) = self.table.get(p) {
            return Ok(v.clone());
        }
        if p > self.limit {
            return Err(Error::PrimeOutOfRange {
                prime: BigUint::from(p),
                limit: self.limit,
            });
        }
        if let Some(v) = self.cache.lock().unwrap().get(&p) {
            return Ok(v.clone());
        }
        let spf = self.sieve_for(p);
        let value = convolution(p, &spf, self.mode)?;
        self.cache.lock().unwrap().insert(p, value.clone());
        Ok(value)
    }

    fn prime_limit(&self) -> u64 {
        self.limit
    }
}

/// τ(n) for any `1 ≤ n ≤ EXTENDED_LIMIT_MAX` without a table.
pub fn tau_by_divisor_sums(n: u64, mode: Parallelism) -> Result<BigInt> {
    if n == 0 || n > EXTENDED_LIMIT_MAX {
        return Err(Error::RangeError {
            what: "convolution argument",
            value: n as i64,
        });
    }
    let spf = smallest_prime_factors(n as usize);
    convolution(n, &spf, mode)
}

fn smallest_prime_factors(size: usize) -> Vec<u32> {
    let mut spf = vec![0u32; size.max(2)];
    for i in 2..spf.len() {
        if spf[i] == 0 {
            spf[i] = i as u32;
            let mut j = i * i;
            while j < spf.len() {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn sigma5(mut k: u32, spf: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    while k > 1 {
        let p = spf[k as usize];
        let p5 = (p as u128).pow(5);
        let (mut term, mut sum) = (1u128, 1u128);
        while k.is_multiple_of(p) {
            k /= p;
            term *= p5;
            sum += term;
        }
        acc *= sum;
    }
    acc
}

/// Unsigned 320-bit accumulator, little-endian limbs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Wide([u64; 5]);

impl Wide {
    fn add_product(&mut self, a: u128, b: u128) {
        let (a0, a1) = (a as u64 as u128, a >> 64);
        let (b0, b1) = (b as u64 as u128, b >> 64);
        let p00 = a0 * b0;
        let p01 = a0 * b1;
        let p10 = a1 * b0;
        let p11 = a1 * b1;
        let mid = (p00 >> 64) + (p01 as u64 as u128) + (p10 as u64 as u128);
        let high = p11
            .wrapping_add(p01 >> 64)
            .wrapping_add(p10 >> 64)
            .wrapping_add(mid >> 64);
        self.add(Wide([
            p00 as u64,
            mid as u64,
            high as u64,
            (high >> 64) as u64,
            0,
        ]));
    }

    fn add(&mut self, other: Wide) {
        let mut carry = 0u128;
        for (x, y) in self.0.iter_mut().zip(other.0) {
            let s = *x as u128 + y as u128 + carry;
            *x = s as u64;
            carry = s >> 64;
        }
        debug_assert_eq!(carry, 0, "320-bit accumulator overflow");
    }

    fn to_biguint(self) -> BigUint {
        self.0
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &limb| (acc << 64u32) + limb)
    }
}

fn sigma_big(n: u64, k: u32) -> BigUint {
    let f = factorize(&BigInt::from(n), Budget::DEFAULT).expect("n > 0");
    f.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
        let pk = p.pow(k);
        let mut term = BigUint::one();
        let mut sum = BigUint::one();
        for _ in 0..*e {
            term *= &pk;
            sum += &term;
        }
        acc * sum
    })
}

fn convolution(n: u64, spf: &[u32], mode: Parallelism) -> Result<BigInt> {
    debug_assert!(spf.len() as u64 >= n);
    let half = (n - 1) / 2;
    let paired = fold_chunks(
        mode,
        1..half + 1,
        1 << 15,
        Wide::default(),
        |range| {
            let mut acc = Wide::default();
            for k in range {
                acc.add_product(sigma5(k as u32, spf), sigma5((n - k) as u32, spf));
            }
            acc
        },
        |mut a, b| {
            a.add(b);
            a
        },
    );
    let mut sum = paired.to_biguint() * 2u32;
    if n.is_multiple_of(2) {
        let s = BigUint::from(sigma5((n / 2) as u32, spf));
        sum += &s * &s;
    }
    let numerator = BigInt::from(sigma_big(n, 11) * 65u32 + sigma_big(n, 5) * 691u32)
        - BigInt::from(sum * (691u32 * 252));
    let (q, r) = numerator.div_rem(&BigInt::from(756));
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!(
            "divisor-sum identity not integral at n = {n}"
        )));
    }
    Ok(q)
}
