//! Builders for the q-expansion `q∏(1−q^k)^24 = Σ τ(n)qⁿ`.
//!
//! The fast builder starts from the sparse cube of the Euler product,
//! `∏(1−q^k)^3 = Σ_{m≥0} (−1)^m (2m+1) q^{m(m+1)/2}`, and squares it three
//! times (3 → 6 → 12 → 24) with truncation after every step. Each squaring is
//! carried out modulo several NTT primes and the coefficients are recovered by
//! Chinese remaindering. The result is exact because
//! `|τ(n)| ≤ d(n)·n^{11/2} ≤ 2n^6` and the modulus product exceeds `4N^6`.
//!
//! The naive builder is an independent oracle: the pentagonal-number series
//! for `∏(1−q^k)` multiplied into an accumulator 24 times in big integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::ntt::{ntt_primes, square_truncated, NttPrime};
use super::TauTable;
use crate::arith::pow_mod_u64;
use crate::par::{map_range, map_slice};
use crate::{Error, Parallelism, Result};

/// Largest order accepted by [`build_tau_table_naive`].
pub const NAIVE_LIMIT: usize = 2000;

/// Exact τ(1..=n) via three truncated squarings.
pub fn build_tau_table(n: usize) -> Result<TauTable> {
    build_tau_table_with(n, Parallelism::default())
}

pub fn build_tau_table_with(n: usize, mode: Parallelism) -> Result<TauTable> {
    if n == 0 {
        return Err(Error::RangeError {
            what: "table order",
            value: 0,
        });
    }
    let len = (2 * n - 1).next_power_of_two();
    let primes = choose_moduli(n, len);
    let residues: Vec<Vec<u64>> = map_slice(mode, &primes, |&prime| eta24_mod(n, prime));
    let crt = Crt::new(&primes);
    let chunk = 4096u64;
    let chunks = (n as u64).div_ceil(chunk);
    let coeffs: Vec<BigInt> = map_range(mode, 0..chunks, |c| {
        let start = (c * chunk) as usize;
        let end = (start + chunk as usize).min(n);
        let mut digits = vec![0u64; primes.len()];
        (start..end)
            .map(|i| {
                for (d, r) in digits.iter_mut().zip(&residues) {
                    *d = r[i];
                }
                crt.reconstruct(&digits)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    TauTable::from_coeffs(coeffs)
}

fn choose_moduli(n: usize, len: usize) -> Vec<NttPrime> {
    let target = BigUint::from(n).pow(6) * 4u32;
    let mut product = BigUint::one();
    let mut chosen = Vec::new();
    for prime in ntt_primes(len) {
        product *= prime.p;
        chosen.push(prime);
        if product > target {
            return chosen;
        }
    }
    panic!("not enough NTT primes below 2^31 for a table of order {n}");
}

/// `∏(1−q^k)^24 mod (p, q^n)`.
fn eta24_mod(n: usize, prime: NttPrime) -> Vec<u64> {
    let p = prime.p;
    let mut cube = vec![0u64; n];
    for m in 0u64.. {
        let e = (m * (m + 1) / 2) as usize;
        if e >= n {
            break;
        }
        let c = (2 * m + 1) % p;
        cube[e] = if m % 2 == 0 { c } else { (p - c) % p };
    }
    let sixth = square_truncated(&cube, n, prime);
    let twelfth = square_truncated(&sixth, n, prime);
    square_truncated(&twelfth, n, prime)
}

/// Garner reconstruction into the symmetric residue range.
struct Crt {
    moduli: Vec<u64>,
    /// `(m_0 ⋯ m_{j−1})^{-1} mod m_j`
    prefix_inverse: Vec<u64>,
    product: BigInt,
    half: BigInt,
}

impl Crt {
    fn new(primes: &[NttPrime]) -> Self {
        let moduli: Vec<u64> = primes.iter().map(|p| p.p).collect();
        let prefix_inverse = (0..moduli.len())
            .map(|j| {
                let mj = moduli[j];
                let prefix = moduli[..j].iter().fold(1u64, |acc, &m| acc * (m % mj) % mj);
                pow_mod_u64(prefix, mj - 2, mj)
            })
            .collect();
        let product: BigInt = moduli.iter().map(|&m| BigInt::from(m)).product();
        let half = &product >> 1u32;
        Crt {
            moduli,
            prefix_inverse,
            product,
            half,
        }
    }

    fn reconstruct(&self, residues: &[u64]) -> BigInt {
        let k = self.moduli.len();
        let mut mixed = vec![0u64; k];
        for j in 0..k {
            let mj = self.moduli[j];
            // value of the partial mixed-radix number modulo m_j
            let mut partial = 0u64;
            for i in (0..j).rev() {
                partial = (partial * (self.moduli[i] % mj) + mixed[i]) % mj;
            }
            let diff = (residues[j] + mj - partial) % mj;
            mixed[j] = diff * self.prefix_inverse[j] % mj;
        }
        let mut x = BigInt::zero();
        for j in (0..k).rev() {
            x = x * self.moduli[j] + mixed[j];
        }
        if x > self.half {
            x - &self.product
        } else {
            x
        }
    }
}

/// Slow reference builder; rejects orders above [`NAIVE_LIMIT`].
pub fn build_tau_table_naive(n: usize) -> Result<TauTable> {
    if n > NAIVE_LIMIT {
        return Err(Error::BudgetExceeded {
            requested: n as u64,
            limit: NAIVE_LIMIT as u64,
        });
    }
    if n == 0 {
        return Err(Error::RangeError {
            what: "table order",
            value: 0,
        });
    }
    let euler = pentagonal_terms(n);
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    for _ in 0..24 {
        let mut next = vec![BigInt::zero(); n];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(e, s) in &euler {
                if i + e >= n {
                    break;
                }
                if s > 0 {
                    next[i + e] += a;
                } else {
                    next[i + e] -= a;
                }
            }
        }
        acc = next;
    }
    TauTable::from_coeffs(acc)
}

/// Nonzero terms `(exponent, sign)` of `∏(1−q^k)` below `q^n`, sorted.
fn pentagonal_terms(n: usize) -> Vec<(usize, i8)> {
    let mut terms = vec![(0usize, 1i8)];
    for j in 1usize.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = j * (3 * j - 1) / 2;
        let b = j * (3 * j + 1) / 2;
        if a >= n {
            break;
        }
        terms.push((a, sign));
        if b < n {
            terms.push((b, sign));
        }
    }
    terms.sort_unstable();
    terms
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(build_tau_table(1).unwrap().coeffs(), ints(&[1]).as_slice());
        assert_eq!(
            build_tau_table(3).unwrap().coeffs(),
            ints(&[1, -24, 252]).as_slice()
        );
        assert_eq!(
            build_tau_table_naive(2).unwrap().coeffs(),
            ints(&[1, -24]).as_slice()
        );
        assert_eq!(
            build_tau_table_naive(1).unwrap().coeffs(),
            ints(&[1]).as_slice()
        );
    }

    #[test]
    fn first_ten_coefficients_agree() {
        let expected = ints(&[
            1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
        ]);
        assert_eq!(build_tau_table(10).unwrap().coeffs(), expected.as_slice());
        assert_eq!(
            build_tau_table_naive(10).unwrap().coeffs(),
            expected.as_slice()
        );
    }

    #[test]
    fn pentagonal_series_matches_direct_product() {
        let n = 60;
        let mut direct = vec![0i64; n];
        direct[0] = 1;
        for k in 1..n {
            for i in (k..n).rev() {
                direct[i] -= direct[i - k];
            }
        }
        let mut sparse = vec![0i64; n];
        for (e, s) in pentagonal_terms(n) {
            sparse[e] = s as i64;
        }
        assert_eq!(direct, sparse);
    }

    #[test]
    fn naive_rejects_large_orders() {
        assert!(matches!(
            build_tau_table_naive(NAIVE_LIMIT + 1),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(build_tau_table(0).is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = build_tau_table_with(3000, Parallelism::Sequential).unwrap();
        let b = build_tau_table_with(3000, Parallelism::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
