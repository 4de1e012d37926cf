//! Number-theoretic transforms over word-sized primes `c·2^k + 1 < 2^31`.

use crate::arith::{is_prime_u64, pow_mod_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NttPrime {
    pub p: u64,
    pub root: u64,
}

const PRIME_CEILING: u64 = 1 << 31;

fn primitive_root(p: u64) -> u64 {
    let mut m = p - 1;
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod_u64(g, (p - 1) / q, p) != 1))
        .expect("a prime modulus has a primitive root")
}

/// Primes `p ≡ 1 (mod len)` below 2^31, largest first.
pub(crate) fn ntt_primes(len: usize) -> impl Iterator<Item = NttPrime> {
    let len = len as u64;
    let top = (PRIME_CEILING - 1) / len;
    (1..=top)
        .rev()
        .map(move |c| c * len + 1)
        .filter(|&p| is_prime_u64(p))
        .map(|p| NttPrime {
            p,
            root: primitive_root(p),
        })
}

fn transform(a: &mut [u64], invert: bool, prime: NttPrime) {
    let n = a.len();
    let p = prime.p;
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w_len = pow_mod_u64(prime.root, (p - 1) / len as u64, p);
        if invert {
            w_len = pow_mod_u64(w_len, p - 2, p);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut w = 1;
        for _ in 0..half {
            twiddles.push(w);
            w = w * w_len % p;
        }
        for block in a.chunks_mut(len) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *v * w % p;
                let x = *u;
                *u = if x + t >= p { x + t - p } else { x + t };
                *v = if x >= t { x - t } else { x + p - t };
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow_mod_u64(n as u64, p - 2, p);
        for x in a.iter_mut() {
            *x = *x * n_inv % p;
        }
    }
}

/// `a² mod (p, x^keep)` for a residue polynomial `a`.
pub(crate) fn square_truncated(a: &[u64], keep: usize, prime: NttPrime) -> Vec<u64> {
    let len = (2 * a.len()).saturating_sub(1).max(1).next_power_of_two();
    let mut buf = vec![0u64; len];
    buf[..a.len()].copy_from_slice(a);
    transform(&mut buf, false, prime);
    for x in buf.iter_mut() {
        *x = *x * *x % prime.p;
    }
    transform(&mut buf, true, prime);
    buf.truncate(keep);
    buf.resize(keep, 0);
    buf
}
