//! Classical congruences for τ and the `{3,5,7}`-smoothness screen for τ(p²).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime_u64, legendre, mod_pow, mul_mod, p_adic_valuation, Budget};
use crate::par::map_range;
use crate::tau::{p_pow_11, tau, TauSource, TauTable};
use crate::{Error, Parallelism, Result};

/// `σ_k(n) mod m` through the prime factorization of `n`.
pub fn sigma_mod(n: &BigInt, k: u64, m: u64, budget: Budget) -> Result<u64> {
    if m == 0 {
        return Err(Error::BadModulus(0));
    }
    if !n.is_positive() {
        return Err(Error::Undefined("sigma of a non-positive integer"));
    }
    let f = factorize(n, budget)?;
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            cofactor: f.cofactor,
        });
    }
    let mut acc = 1 % m;
    for (p, e) in &f.factors {
        let pk = mod_pow(&BigInt::from(p.clone()), k as i64, m)?;
        let (mut term, mut sum) = (1 % m, 1 % m);
        for _ in 0..*e {
            term = mul_mod(term, pk, m);
            sum = (sum + term) % m;
        }
        acc = mul_mod(acc, sum, m);
    }
    Ok(acc)
}

/// Which `n` a rule speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    ResidueIn {
        modulus: u64,
        classes: &'static [u64],
    },
    Coprime(u64),
}

impl Applicability {
    pub fn admits(&self, n: u64) -> bool {
        match *self {
            Applicability::ResidueIn { modulus, classes } => classes.contains(&(n % modulus)),
            Applicability::Coprime(q) => !n.is_multiple_of(q),
        }
    }
}

/// `τ(n) ≡ n^e σ_k(n) (mod m)` for applicable `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceRule {
    pub name: &'static str,
    pub modulus: u64,
    pub e: i64,
    pub k: u64,
    pub applicability: Applicability,
}

impl CongruenceRule {
    pub const MOD_7: CongruenceRule = CongruenceRule {
        name: "i",
        modulus: 7,
        e: 1,
        k: 9,
        applicability: Applicability::ResidueIn {
            modulus: 7,
            classes: &[0, 1, 2, 4],
        },
    };
    pub const MOD_125: CongruenceRule = CongruenceRule {
        name: "ii",
        modulus: 125,
        e: -30,
        k: 71,
        applicability: Applicability::Coprime(5),
    };
    pub const MOD_729: CongruenceRule = CongruenceRule {
        name: "iii",
        modulus: 729,
        e: -610,
        k: 1231,
        applicability: Applicability::ResidueIn {
            modulus: 3,
            classes: &[1],
        },
    };

    pub const ALL: [CongruenceRule; 3] = [Self::MOD_7, Self::MOD_125, Self::MOD_729];

    pub fn by_name(name: &str) -> Option<CongruenceRule> {
        Self::ALL.into_iter().find(|r| r.name == name)
    }

    pub fn describe(&self) -> String {
        format!(
            "tau(n) = n^{} sigma_{}(n) (mod {})",
            self.e, self.k, self.modulus
        )
    }

    /// `n^e σ_k(n) mod m`, reduced further to `modulus`, which must divide m.
    pub fn predicted(&self, n: u64, modulus: u64, budget: Budget) -> Result<u64> {
        if !self.modulus.is_multiple_of(modulus) {
            return Err(Error::BadModulus(modulus));
        }
        let nb = BigInt::from(n);
        let power = mod_pow(&nb, self.e, self.modulus)?;
        let sigma = sigma_mod(&nb, self.k, self.modulus, budget)?;
        Ok(mul_mod(power, sigma, self.modulus) % modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    Holds,
    NotApplicable,
    Fails { tau_residue: u64, predicted: u64 },
}

fn tau_from_table(n: u64, table: &TauTable, budget: Budget) -> Result<BigInt> {
    match table.get(n) {
        Some(v) => Ok(v.clone()),
        None => tau(&BigInt::from(n), table, budget),
    }
}

fn residue(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

pub fn check_rule(
    rule: &CongruenceRule,
    n: u64,
    table: &TauTable,
    budget: Budget,
) -> Result<RuleOutcome> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if !rule.applicability.admits(n) {
        return Ok(RuleOutcome::NotApplicable);
    }
    let tau_residue = residue(&tau_from_table(n, table, budget)?, rule.modulus);
    let predicted = rule.predicted(n, rule.modulus, budget)?;
    Ok(if tau_residue == predicted {
        RuleOutcome::Holds
    } else {
        RuleOutcome::Fails {
            tau_residue,
            predicted,
        }
    })
}

/// Tally of a sweep over `1..=max`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub checked: u64,
    pub passed: u64,
    pub failures: Vec<u64>,
}

impl SweepSummary {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_outcomes(outcomes: Vec<(u64, Option<bool>)>) -> Self {
        let mut s = SweepSummary::default();
        for (n, o) in outcomes {
            match o {
                Some(true) => {
                    s.checked += 1;
                    s.passed += 1;
                }
                Some(false) => {
                    s.checked += 1;
                    s.failures.push(n);
                }
                None => {}
            }
        }
        s
    }
}

pub fn sweep_rule(
    rule: &CongruenceRule,
    max: u64,
    table: &TauTable,
    budget: Budget,
    mode: Parallelism,
) -> Result<SweepSummary> {
    let outcomes = map_range(mode, 1..max + 1, |n| {
        check_rule(rule, n, table, budget).map(|o| {
            let verdict = match o {
                RuleOutcome::Holds => Some(true),
                RuleOutcome::NotApplicable => None,
                RuleOutcome::Fails { .. } => Some(false),
            };
            (n, verdict)
        })
    });
    Ok(SweepSummary::from_outcomes(
        outcomes.into_iter().collect::<Result<_>>()?,
    ))
}

/// `64000 | τ(1000n)`.
pub fn check_64000<S: TauSource + ?Sized>(n: u64, src: &S, budget: Budget) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let v = tau(&BigInt::from(n * 1000), src, budget)?;
    Ok((v % BigInt::from(64000)).is_zero())
}

pub fn sweep_64000<S: TauSource + ?Sized>(
    max: u64,
    src: &S,
    budget: Budget,
    mode: Parallelism,
) -> Result<SweepSummary> {
    let outcomes = map_range(mode, 1..max + 1, |n| {
        check_64000(n, src, budget).map(|ok| (n, Some(ok)))
    });
    Ok(SweepSummary::from_outcomes(
        outcomes.into_iter().collect::<Result<_>>()?,
    ))
}

/// `ν₂(τ(n)) ≥ 3ν₂(n)`.
pub fn check_two_adic(n: u64, table: &TauTable, budget: Budget) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let v = tau_from_table(n, table, budget)?;
    if v.is_zero() {
        return Err(Error::LehmerViolation(n));
    }
    Ok(p_adic_valuation(&v, 2)? >= 3 * n.trailing_zeros())
}

pub fn sweep_two_adic(
    max: u64,
    table: &TauTable,
    budget: Budget,
    mode: Parallelism,
) -> Result<SweepSummary> {
    let outcomes = map_range(mode, 1..max + 1, |n| {
        check_two_adic(n, table, budget).map(|ok| (n, Some(ok)))
    });
    Ok(SweepSummary::from_outcomes(
        outcomes.into_iter().collect::<Result<_>>()?,
    ))
}

/// τ(p²) with the primes 3, 5, 7 removed, plus residue diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop5Screen {
    pub p: u64,
    pub tau_p2: BigInt,
    pub exponents: [u32; 3],
    pub cofactor: BigInt,
    pub smooth: bool,
    pub qr_mod_7: bool,
    pub qr_mod_5: bool,
    pub one_mod_3: bool,
    pub residue_mod_7: u64,
    pub residue_mod_5: u64,
    pub residue_mod_729: u64,
    /// For `p` a nonzero square mod 7: `τ(p²) ≡ 3p² (mod 7)`. Vacuous otherwise.
    pub mod_7_consistent: bool,
}

pub fn prop5_screen<S: TauSource + ?Sized>(p: u64, src: &S) -> Result<Prop5Screen> {
    if p < 3 {
        return Err(Error::RangeError {
            what: "odd prime p",
            value: p as i64,
        });
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    let tau_p = src.tau_prime(p)?;
    let tau_p2 = &tau_p * &tau_p - p_pow_11(&p.into());
    if tau_p2.is_zero() {
        return Err(Error::LehmerViolation(p * p));
    }
    let mut cofactor = tau_p2.clone();
    let mut exponents = [0u32; 3];
    for (slot, q) in exponents.iter_mut().zip([3u32, 5, 7]) {
        while (&cofactor % q).is_zero() {
            cofactor /= q;
            *slot += 1;
        }
    }
    let pb = BigInt::from(p);
    let qr = |q: u64| legendre(&pb, q).map(|s| s == 1);
    let qr_mod_7 = qr(7)?;
    let residue_mod_7 = residue(&tau_p2, 7);
    let mod_7_consistent = !qr_mod_7 || residue_mod_7 == mul_mod(3, mul_mod(p % 7, p % 7, 7), 7);
    Ok(Prop5Screen {
        p,
        smooth: cofactor.magnitude().is_one(),
        exponents,
        cofactor,
        qr_mod_7,
        qr_mod_5: qr(5)?,
        one_mod_3: p % 3 == 1,
        residue_mod_7,
        residue_mod_5: residue(&tau_p2, 5),
        residue_mod_729: residue(&tau_p2, 729),
        mod_7_consistent,
        tau_p2,
    })
}
