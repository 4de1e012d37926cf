//! End-to-end acceptance run. Prints one line per criterion and exits nonzero
//! if any criterion fails or overruns its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramanujan_tau::arith::{factorize, primes_up_to, Budget};
use ramanujan_tau::congruence::{
    prop5_screen, sweep_64000, sweep_rule, sweep_two_adic, CongruenceRule,
};
use ramanujan_tau::lucas::{
    lehmer_heuristic_product, lucas_params, lucas_u, primitive_prime_factors,
    small_index_identities, tau_decompose,
};
use ramanujan_tau::orbit::{
    check_prop4, check_square_growth, check_unit_values, iterate_orbit, prop1_verdict,
};
use ramanujan_tau::symforms::{
    eval_h, lucas_form_f, symmetric_reduce_h, thue_norm_parts, thue_polynomial, BivariatePoly,
};
use ramanujan_tau::tau::{
    build_tau_table, build_tau_table_naive, p_pow_11, tau_prime_power, ExtendedTau, TauTable,
    EXTENDED_LIMIT_MAX,
};
use ramanujan_tau::{Error, Parallelism};

const TABLE_N: usize = 100_000;
const SEED: u64 = 0x7a75_2024;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Duration,
    run: fn(&TauTable) -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn series(_: &TauTable) -> Outcome {
    let fast = build_tau_table(500).map_err(err)?;
    let naive = build_tau_table_naive(500).map_err(err)?;
    ensure(fast == naive, || "fast and naive tables differ".into())?;
    ensure(fast.get(2) == Some(&big(-24)), || "tau(2) != -24".into())?;
    ensure(fast.get(3) == Some(&big(252)), || "tau(3) != 252".into())?;
    let f = factorize(&big(252), Budget::DEFAULT).map_err(err)?;
    let expect: Vec<(BigUint, u32)> = vec![(2u32.into(), 2), (3u32.into(), 2), (7u32.into(), 1)];
    ensure(f.factors == expect, || {
        format!("252 factors as {:?}", f.factors)
    })?;
    Ok("500 coefficients agree".into())
}

fn structure(t: &TauTable) -> Outcome {
    let mut pairs = 0;
    for m in 1..=1000u64 {
        for n in m..=1000 / m {
            if m.gcd(&n) == 1 {
                let lhs = t.get(m * n).unwrap();
                let rhs = t.get(m).unwrap() * t.get(n).unwrap();
                ensure(*lhs == rhs, || format!("multiplicativity fails at {m}·{n}"))?;
                pairs += 1;
            }
        }
    }
    let mut recurrences = 0;
    for p in primes_up_to(31) {
        let p11 = p_pow_11(&BigUint::from(p));
        let mut a = 0u32;
        while let Some(pa2) = p.checked_pow(a + 2).filter(|&v| v <= TABLE_N as u64) {
            let get = |e: u32| t.get(p.pow(e)).unwrap().clone();
            let rhs = get(1) * get(a + 1) - &p11 * get(a);
            ensure(t.get(pa2) == Some(&rhs), || {
                format!("recurrence fails at {p}^{}", a + 2)
            })?;
            recurrences += 1;
            a += 1;
        }
    }
    let primes = primes_up_to(10_000);
    for &p in &primes {
        let tp = t.get(p).unwrap();
        ensure(tp * tp < p_pow_11(&BigUint::from(p)) * 4, || {
            format!("Deligne bound fails at {p}")
        })?;
    }
    Ok(format!(
        "{pairs} coprime pairs, {recurrences} recurrence steps, {} primes bounded",
        primes.len()
    ))
}

fn lucas_decomposition(t: &TauTable) -> Outcome {
    let mut checked = 0;
    for p in primes_up_to(100) {
        for a in 0..=8u32 {
            let (shift, u) = tau_decompose(p, a, t).map_err(err)?;
            let value = BigInt::from(p).pow(shift as u32) * u;
            ensure(value == tau_prime_power(p, a, t.get(p).unwrap()), || {
                format!("decomposition fails at {p}^{a}")
            })?;
            if let Some(direct) = p.checked_pow(a).and_then(|pa| t.get(pa)) {
                ensure(&value == direct, || {
                    format!("decomposition disagrees with table at {p}^{a}")
                })?;
            }
            checked += 1;
        }
    }
    let params2 = lucas_params(2, &big(-24)).map_err(err)?;
    ensure(lucas_u(&params2, 2) == big(-3), || "u_2(2) != -3".into())?;
    for p in primes_up_to(1000) {
        let tp = t.get(p).unwrap();
        let (t2, t3, t5) = small_index_identities(p, tp);
        ensure(
            t2 == tau_prime_power(p, 2, tp)
                && t3 == tau_prime_power(p, 3, tp)
                && t5 == tau_prime_power(p, 5, tp),
            || format!("closed forms fail at {p}"),
        )?;
    }
    Ok(format!(
        "{checked} prime powers decomposed; closed forms hold for p <= 1000"
    ))
}

fn primitive_divisors(t: &TauTable) -> Outcome {
    let params = lucas_params(2, t.get(2).unwrap()).map_err(err)?;
    for m in 2..=30u64 {
        let pf = primitive_prime_factors(&params, m, Budget::DEFAULT).map_err(err)?;
        ensure(!pf.primes.is_empty(), || {
            format!("u_2({m}) has no primitive prime")
        })?;
        for q in &pf.primes {
            let r = q % m;
            ensure(r == BigUint::one() || r == BigUint::from(m - 1), || {
                format!("primitive prime {q} of u_2({m}) is not +-1 mod {m}")
            })?;
        }
    }
    for m in 1..=200u64 {
        ensure(lucas_u(&params, m).is_odd(), || format!("u_2({m}) is even"))?;
    }
    Ok("u_2(m) has primitive primes for 2 <= m <= 30 and is odd for m <= 200".into())
}

fn even_orbit_primes(t: &TauTable) -> Outcome {
    let ext = ExtendedTau::new(t, EXTENDED_LIMIT_MAX);
    let budget = Budget::DEFAULT;
    let (mut exact, mut bounded) = (0, 0);
    for n in (2..=100u64).step_by(2) {
        let record = iterate_orbit(n, 3, &ext, budget).map_err(err)?;
        for k in 1..=3 {
            let v = prop1_verdict(&record, k, &ext, budget).map_err(err)?;
            ensure(v.is_success(), || format!("n = {n}, k = {k}: {v:?}"))?;
            if v.as_str() == "holds" {
                exact += 1;
            } else {
                bounded += 1;
            }
        }
    }
    Ok(format!(
        "150 cases: {exact} exact, {bounded} via a certified prime factor"
    ))
}

fn unit_values(t: &TauTable) -> Outcome {
    let found = check_unit_values(10_000, t).map_err(err)?;
    ensure(found.is_empty(), || format!("|tau(n)| = 1 at {found:?}"))?;
    Ok("no unit values in [2, 10^4]".into())
}

fn square_growth(t: &TauTable) -> Outcome {
    let found = check_square_growth(10_000, t).map_err(err)?;
    ensure(found.is_empty(), || format!("exceptions {found:?}"))?;
    Ok("squares and even prime powers up to 10^4 grow".into())
}

fn orbit_log_bound(t: &TauTable) -> Outcome {
    let ext = ExtendedTau::new(t, EXTENDED_LIMIT_MAX);
    let (mut verified, mut repeating) = (0, 0);
    for n in 2..=5u64 {
        for k in 0..=3usize {
            match check_prop4(n, k, &ext, Budget::DEFAULT) {
                Ok(true) => verified += 1,
                Ok(false) => return Err(format!("bound fails for n = {n}, k = {k}")),
                Err(Error::CardinalityViolation) => repeating += 1,
                Err(e) => return Err(format!("n = {n}, k = {k}: {e}")),
            }
        }
    }
    Ok(format!(
        "{verified} orbits verified, {repeating} with repeated elements"
    ))
}

fn smoothness_screen(t: &TauTable) -> Outcome {
    let primes: Vec<u64> = primes_up_to(300).into_iter().skip(1).collect();
    for &p in &primes {
        let s = prop5_screen(p, t).map_err(err)?;
        ensure(!s.smooth, || format!("tau({p}^2) is {{3,5,7}}-smooth"))?;
        ensure(s.mod_7_consistent, || {
            format!("mod 7 residue inconsistent at {p}")
        })?;
        if s.qr_mod_7 && p != 7 {
            ensure(s.residue_mod_7 != 0, || format!("7 | tau({p}^2)"))?;
        }
    }
    Ok(format!("{} odd primes screened", primes.len()))
}

fn congruences(t: &TauTable) -> Outcome {
    let budget = Budget::DEFAULT;
    let mode = Parallelism::default();
    let mut parts = Vec::new();
    for rule in CongruenceRule::ALL {
        let s = sweep_rule(&rule, 10_000, t, budget, mode).map_err(err)?;
        ensure(s.all_pass(), || {
            format!("rule {} fails at {:?}", rule.name, s.failures)
        })?;
        parts.push(format!("{}: {}", rule.name, s.checked));
    }
    let s = sweep_64000(100, t, budget, mode).map_err(err)?;
    ensure(s.all_pass(), || format!("64000 fails at {:?}", s.failures))?;
    let s = sweep_two_adic(10_000, t, budget, mode).map_err(err)?;
    ensure(s.all_pass(), || {
        format!("2-adic law fails at {:?}", s.failures)
    })?;
    Ok(format!("applicable n per rule {}", parts.join(", ")))
}

fn symmetric_forms(_: &TauTable) -> Outcome {
    let h4 = symmetric_reduce_h(4).map_err(err)?;
    ensure(h4 == BivariatePoly::from_i64(&[1, -3, 1]), || {
        format!("H_4 = {h4}")
    })?;
    for a in (2..=12u32).step_by(2) {
        let h = symmetric_reduce_h(a).map_err(err)?;
        let f = lucas_form_f(a);
        for x in -6..=6i64 {
            for y in -6..=6i64 {
                let s = big(x + y);
                ensure(
                    eval_h(&h, &(&s * &s), &big(x * y)) == f.eval(&big(x), &big(y)),
                    || format!("round trip fails for a = {a} at ({x}, {y})"),
                )?;
            }
        }
    }
    Ok(format!("H_4 = {h4}; round trip holds for even a <= 12"))
}

fn thue_forms(_: &TauTable) -> Outcome {
    let golden = [
        4, 77, 660, 3465, 11880, 29106, 49896, 62370, 53460, 31185, 10692, 1701,
    ];
    let t2 = thue_polynomial(2).map_err(err)?;
    ensure(t2 == BivariatePoly::from_i64(&golden), || {
        format!("r = 2 form is {t2}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for r in 0..=10i64 {
        let form = thue_polynomial(r).map_err(err)?;
        for _ in 0..50 {
            let a = big(rng.gen_range(-1_000_000..=1_000_000));
            let b = big(rng.gen_range(-1_000_000..=1_000_000));
            let (x, y) = thue_norm_parts(r, &a, &b).map_err(err)?;
            ensure(y == form.eval(&a, &b), || {
                format!("form mismatch at r = {r}")
            })?;
            let norm = Pow::pow(&a * &a - &b * &b * 3, 11u32);
            ensure(&x * &x - &y * &y * 3 == norm, || {
                format!("norm identity fails at r = {r}")
            })?;
        }
    }
    Ok("golden coefficients match; 550 norm identities hold".into())
}

fn heuristic_product(t: &TauTable) -> Outcome {
    let mut prev: Option<BigRational> = None;
    let mut last = None;
    for q_max in (100..=1000u64).step_by(100) {
        let h = lehmer_heuristic_product(23, q_max, t).map_err(err)?;
        ensure(h.skipped.is_empty(), || {
            format!("ranks not found for {:?}", h.skipped)
        })?;
        ensure(
            h.value.is_positive() && h.value < BigRational::one(),
            || format!("product {} outside (0,1) at {q_max}", h.decimal()),
        )?;
        if let Some(p) = &prev {
            ensure(h.value <= *p, || format!("product increases at {q_max}"))?;
        }
        prev = Some(h.value.clone());
        last = Some(h);
    }
    let h = last.unwrap();
    ensure(!h.value.is_zero(), || "empty product".into())?;
    Ok(format!(
        "{} factors, product {} at q <= 1000",
        h.factors,
        h.decimal()
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "series correctness",
            limit: Duration::from_secs(5),
            run: series,
        },
        Criterion {
            id: 2,
            title: "structural identities",
            limit: Duration::from_secs(30),
            run: structure,
        },
        Criterion {
            id: 3,
            title: "Lucas decomposition",
            limit: Duration::from_secs(10),
            run: lucas_decomposition,
        },
        Criterion {
            id: 4,
            title: "primitive divisors",
            limit: Duration::from_secs(10),
            run: primitive_divisors,
        },
        Criterion {
            id: 5,
            title: "largest prime along even orbits",
            limit: Duration::from_secs(120),
            run: even_orbit_primes,
        },
        Criterion {
            id: 6,
            title: "no unit values",
            limit: Duration::from_secs(5),
            run: unit_values,
        },
        Criterion {
            id: 7,
            title: "growth on squares",
            limit: Duration::from_secs(5),
            run: square_growth,
        },
        Criterion {
            id: 8,
            title: "orbit logarithm bound",
            limit: Duration::from_secs(60),
            run: orbit_log_bound,
        },
        Criterion {
            id: 9,
            title: "smoothness screen",
            limit: Duration::from_secs(30),
            run: smoothness_screen,
        },
        Criterion {
            id: 10,
            title: "congruences",
            limit: Duration::from_secs(60),
            run: congruences,
        },
        Criterion {
            id: 11,
            title: "symmetric forms",
            limit: Duration::from_secs(60),
            run: symmetric_forms,
        },
        Criterion {
            id: 12,
            title: "Thue forms",
            limit: Duration::from_secs(60),
            run: thue_forms,
        },
        Criterion {
            id: 13,
            title: "heuristic product",
            limit: Duration::from_secs(60),
            run: heuristic_product,
        },
    ];

    let start = Instant::now();
    let table = build_tau_table(TABLE_N).expect("table build");
    println!(
        "table N = {TABLE_N} built in {:.2}s",
        start.elapsed().as_secs_f64()
    );

    let mut failed = 0;
    for c in &criteria {
        let t0 = Instant::now();
        let outcome = (c.run)(&table);
        let elapsed = t0.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit: {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} [{:>7.2}s / {:>3}s] {}: {detail}",
            c.id,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            c.title
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
