//! Homogeneous binary forms and exact arithmetic in `Z[√3]`.
//!
//! `F_a(X,Y) = X^a + X^{a−1}Y + ⋯ + Y^a` is symmetric, so it is a polynomial
//! in `S = X+Y` and `P = XY`; for even `a` only even powers of `S` occur and
//! `F_a = H_a(S², P)` for a form `H_a` of degree `a/2`. `H_a` is produced by
//! running `F_a = S·F_{a−1} − P·F_{a−2}` in `(S, P)` coordinates.
//!
//! The Thue forms come from expanding `(a+b√3)^11·(2+√3)^r` and taking the
//! `√3` coordinate, i.e. `(z − z̄)/(2√3)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Homogeneous form of degree `d`; `coeffs[i]` multiplies `x^{d−i} y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: Vec<BigInt>,
}

impl BivariatePoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BivariatePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * x.pow(d - i as u32) * y.pow(i as u32))
            .sum()
    }

    /// True when consecutive nonzero coefficients alternate in sign.
    pub fn alternates_in_sign(&self) -> bool {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[0].is_positive() != w[1].is_positive())
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = monomial(d - i, i);
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn monomial(px: usize, py: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", px), part("y", py)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// `F_a`: the all-ones form of degree `a`.
pub fn lucas_form_f(a: u32) -> BivariatePoly {
    BivariatePoly::new(vec![BigInt::one(); a as usize + 1])
}

/// `H_a` with `H_a(S², P) = F_a(X, Y)` for `S = X+Y`, `P = XY`.
pub fn symmetric_reduce_h(a: u32) -> Result<BivariatePoly> {
    if a % 2 == 1 {
        return Err(Error::OddDegree(a));
    }
    if a == 0 {
        return Err(Error::RangeError {
            what: "symmetric reduction degree",
            value: 0,
        });
    }
    // f[j] is the coefficient of S^{k−2j} P^j in F_k
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    for k in 2..=a as usize {
        let mut next = vec![BigInt::zero(); k / 2 + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j] += c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(BivariatePoly::new(cur))
}

pub fn eval_h(h: &BivariatePoly, x: &BigInt, y: &BigInt) -> BigInt {
    h.eval(x, y)
}

/// `a + b√3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    /// The fundamental unit `2 + √3`.
    pub fn fundamental_unit() -> Self {
        QuadInt::new(2, 1)
    }

    pub fn conj(&self) -> Self {
        QuadInt::new(self.a.clone(), -&self.b)
    }

    /// `a² − 3b²`
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.b * &self.b * 3
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;

    fn mul(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * 3,
            b: &self.a * &rhs.b + &rhs.a * &self.b,
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;

    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;

    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;

    fn neg(self) -> QuadInt {
        QuadInt::new(-self.a, -self.b)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}√3", self.a, -&self.b)
        } else {
            write!(f, "{} + {}√3", self.a, self.b)
        }
    }
}

pub fn quad_mul(u: &QuadInt, v: &QuadInt) -> QuadInt {
    u * v
}

pub fn quad_pow(u: &QuadInt, k: u32) -> QuadInt {
    u.pow(k)
}

pub fn quad_norm(u: &QuadInt) -> BigInt {
    u.norm()
}

const THUE_EXPONENT: u32 = 11;

fn check_unit_exponent(r: i64) -> Result<u32> {
    if (0..=10).contains(&r) {
        Ok(r as u32)
    } else {
        Err(Error::RangeError {
            what: "unit exponent r",
            value: r,
        })
    }
}

/// The degree-11 form `((a+b√3)^11(2+√3)^r − (a−b√3)^11(2−√3)^r) / (2√3)`.
pub fn thue_polynomial(r: i64) -> Result<BivariatePoly> {
    let r = check_unit_exponent(r)?;
    let unit = QuadInt::fundamental_unit().pow(r);
    let n = THUE_EXPONENT;
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        // (b√3)^i = 3^{⌊i/2⌋} b^i · (√3 when i is odd)
        let scale = BigInt::from(binomial(n as u64, i as u64)) * BigInt::from(3).pow(i / 2);
        let term = if i % 2 == 0 {
            QuadInt::new(scale, 0)
        } else {
            QuadInt::new(0, scale)
        };
        let plus = &term * &unit;
        let diff = &plus - &plus.conj();
        if !diff.a.is_zero() {
            return Err(Error::Inconsistent(
                "rational part survived conjugate subtraction".into(),
            ));
        }
        // diff = 2·plus.b·√3; dividing by 2√3 leaves plus.b
        coeffs.push(diff.b / 2);
    }
    Ok(BivariatePoly::new(coeffs))
}

/// `(X, Y)` with `X + Y√3 = (a+b√3)^11 (2+√3)^r`.
pub fn thue_norm_parts(r: i64, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    let r = check_unit_exponent(r)?;
    let z = &QuadInt::new(a.clone(), b.clone()).pow(THUE_EXPONENT)
        * &QuadInt::fundamental_unit().pow(r);
    Ok((z.a, z.b))
}
