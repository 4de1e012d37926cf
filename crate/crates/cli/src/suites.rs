use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramanujan_tau::arith::primes_up_to;
use ramanujan_tau::congruence::{
    prop5_screen, sweep_64000, sweep_rule, sweep_two_adic, CongruenceRule,
};
use ramanujan_tau::lucas::{
    legendre_index, lehmer_heuristic_product, lucas_params, lucas_u, primitive_prime_factors,
    rank_of_apparition, small_index_identities, tau_decompose,
};
use ramanujan_tau::orbit::{
    check_prop4, check_square_growth, check_two_adic_growth, check_unit_values, prop1_sweep,
};
use ramanujan_tau::symforms::{
    eval_h, lucas_form_f, symmetric_reduce_h, thue_norm_parts, thue_polynomial, BivariatePoly,
};
use ramanujan_tau::tau::{
    build_tau_table_naive, p_pow_11, tau_prime_power, ExtendedTau, TauSource, TauTable,
    EXTENDED_LIMIT_MAX,
};
use ramanujan_tau::Error;

use crate::commands::sweep_case;
use crate::{Context, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Series,
    Lucas,
    Orbit,
    Congruence,
    Symforms,
    Prop5,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Series,
        Suite::Lucas,
        Suite::Orbit,
        Suite::Congruence,
        Suite::Symforms,
        Suite::Prop5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Series => "series",
            Suite::Lucas => "lucas",
            Suite::Orbit => "orbit",
            Suite::Congruence => "congruence",
            Suite::Symforms => "symforms",
            Suite::Prop5 => "prop5",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
    }
}

pub fn run(ctx: &Context, suite: Suite, max: usize) -> anyhow::Result<Report> {
    let table = ctx.table(max)?;
    if suite == Suite::All {
        let mut all = Report::new("all");
        for s in Suite::EACH {
            all.absorb(run_one(ctx, s, &table)?);
        }
        return Ok(all);
    }
    run_one(ctx, suite, &table)
}

fn run_one(ctx: &Context, suite: Suite, t: &TauTable) -> anyhow::Result<Report> {
    let mut r = Report::new(suite.name());
    match suite {
        Suite::Series => series(&mut r, t)?,
        Suite::Lucas => lucas(&mut r, ctx, t)?,
        Suite::Orbit => orbit(&mut r, ctx, t)?,
        Suite::Congruence => congruence(&mut r, ctx, t)?,
        Suite::Symforms => symforms(&mut r, ctx)?,
        Suite::Prop5 => prop5(&mut r, t)?,
        Suite::All => unreachable!("expanded by run"),
    }
    Ok(r)
}

fn series(r: &mut Report, t: &TauTable) -> anyhow::Result<()> {
    let n = t.order();
    let m = n.min(500);
    r.check(
        "naive agreement",
        t.truncated(m) == build_tau_table_naive(m)?,
        format!("first {m} coefficients"),
    );
    if n >= 3 {
        r.check(
            "tau(2)",
            t.get(2) == Some(&BigInt::from(-24)),
            t.get(2).unwrap().to_string(),
        );
        r.check(
            "tau(3)",
            t.get(3) == Some(&BigInt::from(252)),
            t.get(3).unwrap().to_string(),
        );
    }

    let bound = (n as u64).min(1000);
    let mut bad = Vec::new();
    let mut pairs = 0;
    for a in 1..=bound {
        for b in a..=bound / a {
            if num_integer::gcd(a, b) == 1 {
                pairs += 1;
                if *t.get(a * b).unwrap() != t.get(a).unwrap() * t.get(b).unwrap() {
                    bad.push(format!("{a}*{b}"));
                }
            }
        }
    }
    r.check(
        "multiplicativity",
        bad.is_empty(),
        format!("{pairs} coprime pairs; bad: {bad:?}"),
    );

    let mut steps = 0;
    let mut bad = Vec::new();
    for p in primes_up_to(31) {
        let p11 = p_pow_11(&BigUint::from(p));
        let mut a = 0u32;
        while let Some(v) = p.checked_pow(a + 2).filter(|&v| v <= n as u64) {
            let get = |e: u32| t.get(p.pow(e)).unwrap().clone();
            if *t.get(v).unwrap() != get(1) * get(a + 1) - &p11 * get(a) {
                bad.push(format!("{p}^{}", a + 2));
            }
            steps += 1;
            a += 1;
        }
    }
    r.check(
        "prime-power recurrence",
        bad.is_empty(),
        format!("{steps} steps; bad: {bad:?}"),
    );

    let primes = primes_up_to((n as u64).min(10_000));
    let bad: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| {
            let tp = t.get(p).unwrap();
            tp * tp >= p_pow_11(&BigUint::from(p)) * 4
        })
        .collect();
    r.check(
        "Deligne bound",
        bad.is_empty(),
        format!("{} primes; bad: {bad:?}", primes.len()),
    );
    Ok(())
}

fn lucas(r: &mut Report, ctx: &Context, t: &TauTable) -> anyhow::Result<()> {
    let src = ExtendedTau::new(t, EXTENDED_LIMIT_MAX).with_parallelism(ctx.mode);
    let mut bad = Vec::new();
    for p in primes_up_to(100) {
        for a in 0..=8u32 {
            let (shift, u) = tau_decompose(p, a, &src)?;
            let tp = src.tau_prime(p)?;
            if BigInt::from(p).pow(shift as u32) * u != tau_prime_power(p, a, &tp) {
                bad.push(format!("{p}^{a}"));
            }
        }
    }
    r.check(
        "decomposition p<=100 a<=8",
        bad.is_empty(),
        format!("bad: {bad:?}"),
    );

    let params2 = lucas_params(2, &BigInt::from(-24))?;
    let u22 = lucas_u(&params2, 2);
    r.check("u_2(2)", u22 == BigInt::from(-3), u22.to_string());

    let mut bad = Vec::new();
    for p in primes_up_to(1000) {
        let tp = src.tau_prime(p)?;
        let (t2, t3, t5) = small_index_identities(p, &tp);
        if t2 != tau_prime_power(p, 2, &tp)
            || t3 != tau_prime_power(p, 3, &tp)
            || t5 != tau_prime_power(p, 5, &tp)
        {
            bad.push(p);
        }
    }
    r.check(
        "closed forms p<=1000",
        bad.is_empty(),
        format!("bad: {bad:?}"),
    );

    for m in 2..=30u64 {
        let pf = primitive_prime_factors(&params2, m, ctx.budget)?;
        let congruent = pf.primes.iter().all(|q| {
            let res = q % m;
            res == BigUint::one() || res == BigUint::from(m - 1)
        });
        let list: Vec<String> = pf.primes.iter().map(ToString::to_string).collect();
        r.check(
            format!("primitive u_2({m})"),
            !pf.primes.is_empty() && congruent,
            list.join(", "),
        );
    }
    let even: Vec<u64> = (1..=200)
        .filter(|&m| !num_integer::Integer::is_odd(&lucas_u(&params2, m)))
        .collect();
    r.check(
        "u_2(m) odd m<=200",
        even.is_empty(),
        format!("even at {even:?}"),
    );

    let mut checked = 0;
    let mut violations = Vec::new();
    for p in primes_up_to(50) {
        let params = lucas_params(p, &src.tau_prime(p)?)?;
        for ell in primes_up_to(200).into_iter().skip(1) {
            if ell == p {
                continue;
            }
            if let Some(b) = rank_of_apparition(&params, ell, None)? {
                checked += 1;
                if legendre_index(&params, ell)? % b != 0 {
                    violations.push(format!("({p},{ell})"));
                }
            }
        }
    }
    r.push(
        "rank divides legendre index",
        if violations.is_empty() {
            Status::Pass
        } else {
            Status::Inconclusive
        },
        format!("{checked} pairs; exceptions: {violations:?}"),
    );

    let mut prev = None;
    let mut monotone = true;
    let mut last = None;
    for q_max in (100..=1000u64).step_by(100) {
        let h = lehmer_heuristic_product(23, q_max, &src)?;
        if let Some(p) = &prev {
            monotone &= h.value <= *p;
        }
        prev = Some(h.value.clone());
        last = Some(h);
    }
    let h = last.unwrap();
    let in_range = h.value.is_positive() && h.value < num_rational::BigRational::one();
    r.check(
        "heuristic product p0=23 q<=1000",
        in_range && monotone && h.skipped.is_empty(),
        format!(
            "{} ({} factors, non-increasing: {monotone})",
            h.decimal(),
            h.factors
        ),
    );
    Ok(())
}

fn orbit(r: &mut Report, ctx: &Context, t: &TauTable) -> anyhow::Result<()> {
    let src = ExtendedTau::new(t, EXTENDED_LIMIT_MAX).with_parallelism(ctx.mode);
    let starts: Vec<u64> = (2..=100).step_by(2).collect();
    let verdicts = prop1_sweep(&starts, 3, &src, ctx.budget, ctx.mode);
    for (n, v) in starts.iter().zip(verdicts) {
        for (k, verdict) in v?.into_iter().enumerate() {
            let status = match verdict.as_str() {
                "holds" | "holds_via_lower_bound" => Status::Pass,
                "inconclusive" => Status::Inconclusive,
                _ => Status::Fail,
            };
            r.push(
                format!("largest prime n={n} k={}", k + 1),
                status,
                format!("{verdict:?}"),
            );
        }
    }

    let n = t.order() as u64;
    let units = check_unit_values(n, t)?;
    r.check(
        format!("unit values n<={n}"),
        units.is_empty(),
        format!("found: {units:?}"),
    );
    let growth = check_square_growth(n, t)?;
    r.check(
        format!("square growth n<={n}"),
        growth.is_empty(),
        format!("exceptions: {growth:?}"),
    );

    for start in 2..=5u64 {
        for k in 0..=3usize {
            let id = format!("log bound n={start} k={k}");
            match check_prop4(start, k, &src, ctx.budget) {
                Ok(ok) => r.check(id, ok, "P(orbit) > ln(k/2)"),
                Err(Error::CardinalityViolation) => {
                    r.push(id, Status::Skipped, "orbit elements repeat")
                }
                Err(e) => r.push(id, Status::Inconclusive, e.to_string()),
            }
        }
    }

    for start in (2..=40u64).step_by(2) {
        let id = format!("2-adic growth n={start} k=2");
        match check_two_adic_growth(start, 2, &src, ctx.budget) {
            Ok(ok) => r.check(id, ok, "v2 grows by a factor of 3 per step"),
            Err(e) => r.push(id, Status::Inconclusive, e.to_string()),
        }
    }
    Ok(())
}

fn congruence(r: &mut Report, ctx: &Context, t: &TauTable) -> anyhow::Result<()> {
    let max = t.order() as u64;
    for rule in CongruenceRule::ALL {
        let s = sweep_rule(&rule, max, t, ctx.budget, ctx.mode)?;
        sweep_case(
            r,
            format!("rule {} n<={max}", rule.name),
            &s,
            &rule.describe(),
        );
    }
    let s = sweep_64000(100, t, ctx.budget, ctx.mode)?;
    sweep_case(r, "64000 n<=100".into(), &s, "tau(1000n) = 0 (mod 64000)");
    let s = sweep_two_adic(max, t, ctx.budget, ctx.mode)?;
    sweep_case(r, format!("two-adic n<={max}"), &s, "v2(tau(n)) >= 3 v2(n)");
    Ok(())
}

fn symforms(r: &mut Report, ctx: &Context) -> anyhow::Result<()> {
    let h4 = symmetric_reduce_h(4)?;
    r.check(
        "H_4",
        h4 == BivariatePoly::from_i64(&[1, -3, 1]),
        h4.to_string(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    for a in (2..=12u32).step_by(2) {
        let h = symmetric_reduce_h(a)?;
        let f = lucas_form_f(a);
        let ok = (0..50).all(|_| {
            let x = BigInt::from(rng.gen_range(-10_000i64..=10_000));
            let y = BigInt::from(rng.gen_range(-10_000i64..=10_000));
            let s = &x + &y;
            eval_h(&h, &(&s * &s), &(&x * &y)) == f.eval(&x, &y)
        });
        r.check(
            format!("round trip a={a}"),
            ok,
            "H_a(S^2, P) = F_a(X, Y) at 50 random points",
        );
    }

    let golden = [
        4, 77, 660, 3465, 11880, 29106, 49896, 62370, 53460, 31185, 10692, 1701,
    ];
    let t2 = thue_polynomial(2)?;
    r.check(
        "thue r=2 coefficients",
        t2 == BivariatePoly::from_i64(&golden),
        t2.to_string(),
    );

    for e in 0..=10i64 {
        let form = thue_polynomial(e)?;
        let mut ok = true;
        for _ in 0..50 {
            let a = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
            let b = BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000));
            let (x, y) = thue_norm_parts(e, &a, &b)?;
            let norm: BigInt = Pow::pow(&a * &a - &b * &b * 3, 11u32);
            ok &= y == form.eval(&a, &b) && &x * &x - &y * &y * 3 == norm;
        }
        r.check(
            format!("thue norm identity r={e}"),
            ok,
            "X^2 - 3Y^2 = (a^2 - 3b^2)^11 at 50 random pairs",
        );
    }
    Ok(())
}

fn prop5(r: &mut Report, t: &TauTable) -> anyhow::Result<()> {
    let src = ExtendedTau::new(t, EXTENDED_LIMIT_MAX);
    for p in primes_up_to(300).into_iter().skip(1) {
        let s = prop5_screen(p, &src)?;
        let [a, b, c] = s.exponents;
        r.check(
            format!("screen p={p}"),
            !s.smooth && s.mod_7_consistent,
            format!(
                "tau(p^2) = 3^{a} 5^{b} 7^{c} * ({}); mod 7 = {}, mod 5 = {}, mod 729 = {}",
                s.cofactor, s.residue_mod_7, s.residue_mod_5, s.residue_mod_729
            ),
        );
    }
    Ok(())
}
