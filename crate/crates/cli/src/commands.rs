use std::time::Instant;

use anyhow::Context as _;
use num_bigint::BigInt;
use ramanujan_tau::arith::{factorize, is_prime_u64};
use ramanujan_tau::congruence::{
    sweep_64000, sweep_rule, sweep_two_adic, CongruenceRule, SweepSummary,
};
use ramanujan_tau::lucas::{
    legendre_index, lucas_params, lucas_u, odd_exponent_index, primitive_prime_factors,
    rank_of_apparition,
};
use ramanujan_tau::orbit::{iterate_orbit, orbit_max_prime, Termination};
use ramanujan_tau::symforms::thue_polynomial;
use ramanujan_tau::tau::{
    build_tau_table_naive, tau, ExtendedTau, TauSource, EXTENDED_LIMIT_MAX, NAIVE_LIMIT,
};
use ramanujan_tau::Error;

use crate::{cache, format_factorization, suites, Context, Report, Status, DEFAULT_TABLE_N};

fn timed(f: impl FnOnce() -> anyhow::Result<Report>) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut r = f()?;
    r.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

pub fn cmd_table(ctx: &Context, n: usize, selfcheck: bool) -> anyhow::Result<Report> {
    timed(|| {
        let loaded = cache::ensure_table(&ctx.cache_dir, n, ctx.mode)
            .with_context(|| format!("preparing the cache in {}", ctx.cache_dir.display()))?;
        let mut r = Report::new("table");
        let action = if loaded.written { "written" } else { "reused" };
        r.push(
            "cache",
            Status::Pass,
            format!(
                "N={} {action} at {}",
                loaded.cached_order,
                loaded.path.display()
            ),
        );
        if selfcheck {
            let m = n.min(NAIVE_LIMIT);
            let naive = build_tau_table_naive(m)?;
            let on_disk = cache::read_table(&loaded.path)?.truncated(m);
            r.check(
                "selfcheck",
                on_disk == naive,
                format!("first {m} cached coefficients against the direct product expansion"),
            );
        }
        Ok(r)
    })
}

fn source_table(ctx: &Context, n: u64) -> anyhow::Result<ramanujan_tau::tau::TauTable> {
    ctx.table((n as usize).clamp(1000, DEFAULT_TABLE_N))
}

pub fn cmd_tau(ctx: &Context, n: u64) -> anyhow::Result<Report> {
    timed(|| {
        let table = source_table(ctx, n)?;
        let src = ExtendedTau::new(&table, EXTENDED_LIMIT_MAX).with_parallelism(ctx.mode);
        let mut r = Report::new("tau");
        let id = format!("tau({n})");
        match tau(&BigInt::from(n), &src, ctx.budget) {
            Ok(v) => r.push(id, Status::Pass, v.to_string()),
            Err(e @ (Error::PrimeOutOfRange { .. } | Error::IncompleteFactorization { .. })) => {
                r.push(id, Status::Inconclusive, e.to_string())
            }
            Err(e) => r.push(id, Status::Fail, e.to_string()),
        }
        Ok(r)
    })
}

pub fn cmd_orbit(ctx: &Context, n: u64, k: usize) -> anyhow::Result<Report> {
    timed(|| {
        let table = ctx.table(DEFAULT_TABLE_N)?;
        let src = ExtendedTau::new(&table, EXTENDED_LIMIT_MAX).with_parallelism(ctx.mode);
        let rec = iterate_orbit(n, k, &src, ctx.budget)?;
        let mut r = Report::new("orbit");
        for (j, (v, f)) in rec.iterates.iter().zip(&rec.factorizations).enumerate() {
            let status = if f.complete {
                Status::Pass
            } else {
                Status::Inconclusive
            };
            r.push(
                format!("iterate {j}"),
                status,
                format!("{v} = {}", format_factorization(f)),
            );
        }
        let status = match rec.terminated {
            Termination::Completed | Termination::ReachedUnitCycle => Status::Pass,
            Termination::FactorBudgetExhausted => Status::Inconclusive,
            Termination::ReachedZero => Status::Fail,
        };
        let detail = match &rec.blocker {
            Some(e) => format!(
                "{} after {} steps: {e}",
                rec.terminated.as_str(),
                rec.depth()
            ),
            None => format!("{} after {} steps", rec.terminated.as_str(), rec.depth()),
        };
        r.push("termination", status, detail);
        match orbit_max_prime(&rec) {
            Ok((p, exact)) => {
                let (status, kind) = if exact {
                    (Status::Pass, "exact")
                } else {
                    (Status::Inconclusive, "lower bound")
                };
                r.push("max prime", status, format!("{p} ({kind})"));
            }
            Err(e) => r.push("max prime", Status::Skipped, e.to_string()),
        }
        Ok(r)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LucasQuery {
    Term(u64),
    Rank(u64),
    Primitive(u64),
}

pub fn cmd_lucas(ctx: &Context, p: u64, query: LucasQuery) -> anyhow::Result<Report> {
    timed(|| {
        if !is_prime_u64(p) {
            anyhow::bail!("{p} is not prime");
        }
        let table = source_table(ctx, p)?;
        let src = ExtendedTau::new(&table, EXTENDED_LIMIT_MAX).with_parallelism(ctx.mode);
        let params = lucas_params(p, &src.tau_prime(p)?)?;
        let mut r = Report::new("lucas");
        r.push(
            "parameters",
            Status::Pass,
            format!(
                "lambda={} A={} B={}^{}",
                params.lambda,
                params.a,
                p,
                11 - 2 * params.lambda
            ),
        );
        match query {
            LucasQuery::Term(m) => {
                r.push(
                    format!("u_{p}({m})"),
                    Status::Pass,
                    lucas_u(&params, m).to_string(),
                );
            }
            LucasQuery::Rank(ell) => {
                if !is_prime_u64(ell) {
                    anyhow::bail!("{ell} is not prime");
                }
                match rank_of_apparition(&params, ell, None)? {
                    Some(b) => {
                        r.push(format!("rank({ell})"), Status::Pass, b.to_string());
                        if ell != 2 {
                            let idx = legendre_index(&params, ell)?;
                            let status = if idx % b == 0 {
                                Status::Pass
                            } else {
                                Status::Inconclusive
                            };
                            r.push(
                                format!("legendre index({ell})"),
                                status,
                                format!("{idx}, rank divides it: {}", idx % b == 0),
                            );
                        }
                        let oe = odd_exponent_index(&params, ell, None)?;
                        r.push(
                            format!("odd exponent index({ell})"),
                            if oe.mu_confirmed {
                                Status::Pass
                            } else {
                                Status::Inconclusive
                            },
                            format!("c={} nu={} mu={}", oe.c, oe.nu, oe.mu),
                        );
                    }
                    None => r.push(format!("rank({ell})"), Status::Inconclusive, "not found"),
                }
            }
            LucasQuery::Primitive(m) => {
                let pf = primitive_prime_factors(&params, m, ctx.budget)?;
                let list = pf
                    .primes
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ");
                let status = match (pf.primes.is_empty(), pf.complete) {
                    (false, _) => Status::Pass,
                    (true, true) => Status::Fail,
                    (true, false) => Status::Inconclusive,
                };
                let detail = if list.is_empty() {
                    "none".to_string()
                } else {
                    list
                };
                r.push(format!("primitive u_{p}({m})"), status, detail);
                let f = factorize(&pf.term, ctx.budget)?;
                r.push(
                    format!("u_{p}({m})"),
                    Status::Pass,
                    format!("{} = {}", pf.term, format_factorization(&f)),
                );
            }
        }
        Ok(r)
    })
}

pub fn cmd_thue(r_exp: i64) -> anyhow::Result<Report> {
    timed(|| {
        let form = thue_polynomial(r_exp)?;
        let mut r = Report::new("thue");
        let coeffs = form
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        r.push(format!("coefficients(r={r_exp})"), Status::Pass, coeffs);
        r.push(format!("form(r={r_exp})"), Status::Pass, form.to_string());
        Ok(r)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongrRule {
    Rule(CongruenceRule),
    Mod64000,
    TwoAdic,
}

impl CongrRule {
    pub fn parse(s: &str) -> Option<CongrRule> {
        match s {
            "64000" => Some(CongrRule::Mod64000),
            "two-adic" => Some(CongrRule::TwoAdic),
            other => CongruenceRule::by_name(other).map(CongrRule::Rule),
        }
    }
}

pub(crate) fn sweep_case(r: &mut Report, id: String, s: &SweepSummary, what: &str) {
    let mut detail = format!("{} of {} {what} hold", s.passed, s.checked);
    if !s.all_pass() {
        let shown: Vec<String> = s
            .failures
            .iter()
            .take(10)
            .map(ToString::to_string)
            .collect();
        detail.push_str(&format!("; failures at {}", shown.join(", ")));
    }
    r.check(id, s.all_pass(), detail);
}

pub fn cmd_congr(ctx: &Context, rule: CongrRule, max: u64) -> anyhow::Result<Report> {
    timed(|| {
        let table = ctx.table((max as usize).max(1000))?;
        let mut r = Report::new("congr");
        match rule {
            CongrRule::Rule(rule) => {
                let s = sweep_rule(&rule, max, &table, ctx.budget, ctx.mode)?;
                sweep_case(
                    &mut r,
                    format!("rule {} n<={max}", rule.name),
                    &s,
                    &rule.describe(),
                );
            }
            CongrRule::Mod64000 => {
                let s = sweep_64000(max, &table, ctx.budget, ctx.mode)?;
                sweep_case(
                    &mut r,
                    format!("64000 n<={max}"),
                    &s,
                    "tau(1000n) = 0 (mod 64000)",
                );
            }
            CongrRule::TwoAdic => {
                let s = sweep_two_adic(max, &table, ctx.budget, ctx.mode)?;
                sweep_case(
                    &mut r,
                    format!("two-adic n<={max}"),
                    &s,
                    "v2(tau(n)) >= 3 v2(n)",
                );
            }
        }
        Ok(r)
    })
}

pub use suites::Suite;

pub fn cmd_verify(ctx: &Context, suite: Suite, max: usize) -> anyhow::Result<Report> {
    timed(|| suites::run(ctx, suite, max))
}
