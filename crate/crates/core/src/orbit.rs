//! Iterating τ as a dynamical system.
//!
//! With τ(n) := τ(|n|) and τ(0) := 0 the forward orbit of `n ≥ 1` is
//! `n, τ(n), τ(τ(n)), …`. Iterates grow roughly like a sixth power per step,
//! so each new iterate is factored piecewise: if `m = ∏ p^e` then
//! `τ(m) = ∏ τ(p^e)` and the pieces are factored separately.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, Budget, Factorization};
use crate::par::map_slice;
use crate::tau::{tau_prime_power_big, TauSource, TauTable};
use crate::{Error, Parallelism, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Completed,
    ReachedZero,
    ReachedUnitCycle,
    FactorBudgetExhausted,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Completed => "completed_k",
            Termination::ReachedZero => "reached_zero",
            Termination::ReachedUnitCycle => "reached_unit_cycle",
            Termination::FactorBudgetExhausted => "factor_budget_exhausted",
        }
    }
}

/// `τ^{(0)}(n), …` together with one factorization per iterate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub start: u64,
    pub requested: usize,
    pub iterates: Vec<BigInt>,
    pub factorizations: Vec<Factorization>,
    pub terminated: Termination,
    /// Why the orbit stopped early, when it did.
    pub blocker: Option<Error>,
}

impl OrbitRecord {
    /// Number of steps actually taken.
    pub fn depth(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.depth() >= self.requested
    }
}

fn zero_factorization() -> Factorization {
    Factorization {
        sign: 0,
        cofactor: BigUint::zero(),
        ..Factorization::one()
    }
}

/// Applies τ to `n` up to `k` times.
pub fn iterate_orbit<S: TauSource + ?Sized>(
    n: u64,
    k: usize,
    src: &S,
    budget: Budget,
) -> Result<OrbitRecord> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut rec = OrbitRecord {
        start: n,
        requested: k,
        iterates: vec![BigInt::from(n)],
        factorizations: vec![factorize(&BigInt::from(n), budget)?],
        terminated: Termination::Completed,
        blocker: None,
    };
    while rec.depth() < k {
        let cur = rec.iterates.last().unwrap();
        if cur.magnitude().is_one() {
            let fill = k - rec.depth();
            rec.iterates
                .extend(std::iter::repeat_n(BigInt::one(), fill));
            rec.factorizations
                .extend(std::iter::repeat_n(Factorization::one(), fill));
            rec.terminated = Termination::ReachedUnitCycle;
            break;
        }
        match step(rec.factorizations.last().unwrap(), src, budget) {
            Ok((value, f)) => {
                let zero = value.is_zero();
                rec.iterates.push(value);
                rec.factorizations.push(f);
                if zero {
                    rec.terminated = Termination::ReachedZero;
                    break;
                }
            }
            Err(e) => {
                rec.terminated = Termination::FactorBudgetExhausted;
                rec.blocker = Some(e);
                break;
            }
        }
    }
    Ok(rec)
}

fn step<S: TauSource + ?Sized>(
    f: &Factorization,
    src: &S,
    budget: Budget,
) -> Result<(BigInt, Factorization)> {
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.cofactor.clone(),
        });
    }
    let mut pieces = Vec::with_capacity(f.factors.len());
    for (p, e) in &f.factors {
        pieces.push(tau_prime_power_big(p, *e, &src.tau_prime_big(p)?));
    }
    if pieces.iter().any(Zero::is_zero) {
        return Ok((BigInt::zero(), zero_factorization()));
    }
    let value: BigInt = pieces.iter().product();
    let mut parts = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        parts.push(factorize(piece, budget)?);
    }
    Ok((value, Factorization::product(parts)))
}

/// `P(Orb_τ(n,k))`: the largest prime dividing any iterate. `exact` is false
/// when some iterate was only partially factored.
pub fn orbit_max_prime(record: &OrbitRecord) -> Result<(BigUint, bool)> {
    let mut best: Option<BigUint> = None;
    let mut exact = true;
    let mut any = false;
    for (v, f) in record.iterates.iter().zip(&record.factorizations) {
        if v.magnitude() <= &BigUint::one() {
            continue;
        }
        any = true;
        exact &= f.complete;
        if let Some(p) = f.largest_prime() {
            if best.as_ref().is_none_or(|b| p > b) {
                best = Some(p.clone());
            }
        }
    }
    if !any {
        return Err(Error::Undefined("largest prime of an orbit of units"));
    }
    match best {
        Some(p) => Ok((p, exact)),
        None => Err(Error::IncompleteFactorization {
            cofactor: record.factorizations.last().unwrap().cofactor.clone(),
        }),
    }
}

/// Verdict on `P(τ^{(k)}(n)) ≥ 3^{k−1} + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop1Verdict {
    /// The exact largest prime meets the bound.
    Holds {
        prime: BigUint,
    },
    /// A prime factor found without completing the factorization meets it.
    HoldsViaLowerBound {
        prime: BigUint,
    },
    Inconclusive {
        reason: String,
    },
    /// The exact largest prime falls short; `None` when the iterate is ±1.
    Refuted {
        prime: Option<BigUint>,
    },
}

impl Prop1Verdict {
    pub fn is_success(&self) -> bool {
        matches!(
            self,
            Prop1Verdict::Holds { .. } | Prop1Verdict::HoldsViaLowerBound { .. }
        )
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Prop1Verdict::Holds { .. } => "holds",
            Prop1Verdict::HoldsViaLowerBound { .. } => "holds_via_lower_bound",
            Prop1Verdict::Inconclusive { .. } => "inconclusive",
            Prop1Verdict::Refuted { .. } => "refuted",
        }
    }
}

pub fn prop1_bound(k: u32) -> BigUint {
    BigUint::from(3u32).pow(k - 1) + 2u32
}

pub fn check_prop1<S: TauSource + ?Sized>(
    n: u64,
    k: usize,
    src: &S,
    budget: Budget,
) -> Result<Prop1Verdict> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::RangeError {
            what: "even start n",
            value: n as i64,
        });
    }
    let record = iterate_orbit(n, k, src, budget)?;
    prop1_verdict(&record, k, src, budget)
}

/// Evaluates the bound at depth `k` against an existing orbit of even start,
/// which may be shallower than `k`.
pub fn prop1_verdict<S: TauSource + ?Sized>(
    record: &OrbitRecord,
    k: usize,
    src: &S,
    budget: Budget,
) -> Result<Prop1Verdict> {
    if k == 0 {
        return Err(Error::RangeError {
            what: "depth k",
            value: 0,
        });
    }
    if record.start % 2 == 1 {
        return Err(Error::RangeError {
            what: "even start n",
            value: record.start as i64,
        });
    }
    let bound = prop1_bound(k as u32);
    if record.terminated == Termination::ReachedZero {
        return Err(Error::LehmerViolation(record.start));
    }
    if let Some(f) = record.factorizations.get(k) {
        return Ok(if f.complete {
            match f.largest_prime() {
                Some(p) if *p >= bound => Prop1Verdict::Holds { prime: p.clone() },
                other => Prop1Verdict::Refuted {
                    prime: other.cloned(),
                },
            }
        } else {
            match f.largest_prime().filter(|p| **p >= bound) {
                Some(p) => Prop1Verdict::HoldsViaLowerBound { prime: p.clone() },
                None => Prop1Verdict::Inconclusive {
                    reason: format!("no prime factor >= {bound} found in iterate {k}"),
                },
            }
        });
    }
    if record.depth() + 1 == k {
        if let Some(p) =
            divisor_certificate(record.factorizations.last().unwrap(), &bound, src, budget)?
        {
            return Ok(Prop1Verdict::HoldsViaLowerBound { prime: p });
        }
        return Ok(Prop1Verdict::Inconclusive {
            reason: format!("iterate {k} unavailable and no divisor certificate found"),
        });
    }
    Ok(Prop1Verdict::Inconclusive {
        reason: format!("orbit stopped at depth {}", record.depth()),
    })
}

/// A prime `≥ bound` dividing `τ(m)`, found through a single divisor
/// `τ(q^e)` with `q^e ∥ m`.
fn divisor_certificate<S: TauSource + ?Sized>(
    f: &Factorization,
    bound: &BigUint,
    src: &S,
    budget: Budget,
) -> Result<Option<BigUint>> {
    for (q, e) in &f.factors {
        let Ok(tau_q) = src.tau_prime_big(q) else {
            continue;
        };
        let piece = tau_prime_power_big(q, *e, &tau_q);
        if piece.is_zero() {
            return Err(Error::LehmerViolation(q.to_u64().unwrap_or(0)));
        }
        let pf = factorize(&piece, budget)?;
        if let Some(p) = pf.primes().filter(|p| *p >= bound).max() {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Runs [`check_prop1`] for several starts, one orbit per start.
pub fn prop1_sweep<S: TauSource + ?Sized>(
    starts: &[u64],
    max_k: usize,
    src: &S,
    budget: Budget,
    mode: Parallelism,
) -> Vec<Result<Vec<Prop1Verdict>>> {
    map_slice(mode, starts, |&n| {
        let record = iterate_orbit(n, max_k, src, budget)?;
        (1..=max_k)
            .map(|k| prop1_verdict(&record, k, src, budget))
            .collect()
    })
}

/// Checks `P(Orb_τ(n,k)) > ln(k/2)` on an orbit whose `k+1` elements are
/// distinct in absolute value and nonzero.
pub fn check_prop4<S: TauSource + ?Sized>(
    n: u64,
    k: usize,
    src: &S,
    budget: Budget,
) -> Result<bool> {
    let record = iterate_orbit(n, k, src, budget)?;
    if !record.is_complete() {
        return Err(record.blocker.clone().unwrap_or(Error::OrbitIncomplete {
            reached: record.depth(),
            requested: k,
        }));
    }
    let mut seen: Vec<&BigUint> = record.iterates.iter().map(BigInt::magnitude).collect();
    seen.sort();
    seen.dedup();
    if seen.len() != record.iterates.len() || seen[0].is_zero() {
        return Err(Error::CardinalityViolation);
    }
    let (p, _) = orbit_max_prime(&record)?;
    if k == 0 {
        return Ok(true);
    }
    let threshold = (k as f64 / 2.0).ln();
    Ok(p.to_f64().unwrap_or(f64::INFINITY) > threshold)
}

/// All `n ∈ [2, N]` with `|τ(n)| = 1`.
pub fn check_unit_values(n_max: u64, table: &TauTable) -> Result<Vec<u64>> {
    covers(table, n_max)?;
    Ok((2..=n_max)
        .filter(|&n| table.get(n).unwrap().magnitude().is_one())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthException {
    /// A square `n > 1` with `|τ(n)| ≤ n`.
    Square { n: u64, tau: BigInt },
    /// `p^a` with even `a` and `|τ(p^a)| ≤ p^{2a}`.
    PrimePower { p: u64, a: u32, tau: BigInt },
}

/// Squares and even prime powers up to `N` whose τ-value is not larger than
/// the growth bound.
pub fn check_square_growth(n_max: u64, table: &TauTable) -> Result<Vec<GrowthException>> {
    covers(table, n_max)?;
    let mut out = Vec::new();
    let mut r = 2u64;
    while r * r <= n_max {
        let n = r * r;
        let t = table.get(n).unwrap();
        if t.magnitude() <= &BigUint::from(n) {
            out.push(GrowthException::Square { n, tau: t.clone() });
        }
        r += 1;
    }
    for p in crate::arith::primes_up_to((n_max as f64).sqrt() as u64 + 1) {
        let mut a = 2u32;
        while let Some(pa) = p.checked_pow(a).filter(|&v| v <= n_max) {
            let t = table.get(pa).unwrap();
            if t.magnitude() <= &BigUint::from(p).pow(2 * a) {
                out.push(GrowthException::PrimePower {
                    p,
                    a,
                    tau: t.clone(),
                });
            }
            a += 2;
        }
    }
    Ok(out)
}

/// `ν₂(τ^{(j)}(n)) ≥ 3^j ν₂(n)` for `j ≤ k`.
pub fn check_two_adic_growth<S: TauSource + ?Sized>(
    n: u64,
    k: usize,
    src: &S,
    budget: Budget,
) -> Result<bool> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::RangeError {
            what: "even start n",
            value: n as i64,
        });
    }
    let record = iterate_orbit(n, k, src, budget)?;
    if !record.is_complete() {
        return Err(record.blocker.clone().unwrap_or(Error::OrbitIncomplete {
            reached: record.depth(),
            requested: k,
        }));
    }
    let two = BigUint::from(2u32);
    let base = BigUint::from(n.trailing_zeros());
    Ok(record
        .factorizations
        .iter()
        .enumerate()
        .all(|(j, f)| BigUint::from(f.exponent(&two)) >= BigUint::from(3u32).pow(j as u32) * &base))
}

fn covers(table: &TauTable, n: u64) -> Result<()> {
    if n > table.order() as u64 {
        return Err(Error::BudgetExceeded {
            requested: n,
            limit: table.order() as u64,
        });
    }
    Ok(())
}
