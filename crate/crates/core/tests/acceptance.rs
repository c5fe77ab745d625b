//! Acceptance gate. Every criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sylvester::bench::bench_pair;
use sylvester::verify::{run_sweep, SweepConfig, SweepReport};
use sylvester::{
    apostol_bernoulli, apostol_bernoulli_by_recurrence, euler_at_zero, frobenius_number,
    gap_polynomial, gap_set, gh_polynomials, parse_scalar, sum_oracle, sum_s2_closed, sum_theorem1,
    sum_theorem_m, sum_theorem_m1, CoprimePair, IntPolynomial, Scalar,
};

type Outcome = Result<String, String>;

fn s(text: &str) -> Scalar {
    parse_scalar(text).unwrap()
}

fn pair(a: u64, b: u64) -> CoprimePair {
    CoprimePair::new(a, b).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// The closed form and the oracle must both hit `want` within 0.1 s each.
fn check_value(
    label: &str,
    want: &str,
    closed: impl FnOnce() -> sylvester::Result<Scalar>,
    oracle: impl FnOnce() -> sylvester::Result<Scalar>,
) -> Result<(), String> {
    let limit = Duration::from_millis(100);
    let want = s(want);
    for (route, (v, t)) in [("closed form", timed(closed)), ("oracle", timed(oracle))] {
        let v = v.map_err(|e| format!("{label} via {route}: {e}"))?;
        ensure(v == want, || {
            format!("{label} via {route}: got {v}, want {want}")
        })?;
        ensure(t < limit, || format!("{label} via {route}: took {t:?}"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let cap = 1_000;
    let p = pair(3, 17);
    check_value(
        "S_1(2; 3,17)",
        "37515351605",
        || sum_theorem1(&p, &s("2")),
        || sum_oracle(&p, 1, &s("2"), cap),
    )?;
    // The remaining (3,17) values are power sums of exponent two; at exponent
    // one they do not hold (see the README).
    let worked = [
        ("5", "900879734470832437423896"),
        ("1/2", "8822132865/1073741824"),
        ("-1", "408"),
        ("-5/3", "760508529478902941119864/205891132094649"),
        ("sqrt(2)", "34250061+6965604*sqrt(2)"),
        ("-sqrt(2)", "34250061-6965604*sqrt(2)"),
    ];
    for (l, want) in worked {
        let lambda = s(l);
        let label = format!("S_2({l}; 3,17)");
        check_value(
            &label,
            want,
            || sum_s2_closed(&p, &lambda),
            || sum_oracle(&p, 2, &lambda, cap),
        )?;
        check_value(
            &label,
            want,
            || sum_theorem_m(&p, 2, &lambda),
            || sum_oracle(&p, 2, &lambda, cap),
        )?;
        let s1 = sum_oracle(&p, 1, &lambda, cap).map_err(|e| e.to_string())?;
        ensure(s1 != s(want), || {
            format!("S_1({l}; 3,17) unexpectedly equals {want}")
        })?;
    }
    let q = pair(4, 11);
    let minus_one = s("-1");
    check_value(
        "S_1(-1; 4,11)",
        "80",
        || sum_theorem_m1(&q, 1, &minus_one),
        || sum_oracle(&q, 1, &minus_one, cap),
    )?;
    check_value(
        "S_2(-1; 4,11)",
        "1870",
        || sum_theorem_m1(&q, 2, &minus_one),
        || sum_oracle(&q, 2, &minus_one, cap),
    )?;
    Ok("10 values, closed form and oracle each under 0.1 s; (3,17) list at exponent 2".into())
}

fn criterion_2() -> Outcome {
    let expected: [((u64, u64), &[u64]); 2] = [
        (
            (3, 17),
            &[1, 2, 4, 5, 7, 8, 10, 11, 13, 14, 16, 19, 22, 25, 28, 31],
        ),
        (
            (4, 11),
            &[1, 2, 3, 5, 6, 7, 9, 10, 13, 14, 17, 18, 21, 25, 29],
        ),
    ];
    for ((a, b), want) in expected {
        let got = gap_set(&pair(a, b));
        ensure(got.as_slice() == want, || {
            format!("gap_set({a},{b}) = {:?}", got.as_slice())
        })?;
    }
    Ok("gap_set(3,17) and gap_set(4,11) match".into())
}

fn describe_failures(report: &SweepReport, index: usize) -> String {
    let family = &report.families[index];
    let first = family
        .failures
        .first()
        .map(|f| {
            format!(
                "(a={}, b={}, m={}, lambda={}): {}",
                f.a, f.b, f.m, f.lambda, f.detail
            )
        })
        .unwrap_or_default();
    format!(
        "{}: {} failures, first {first}",
        family.name,
        family.failures.len()
    )
}

fn criterion_3(report: &SweepReport, elapsed: Duration) -> Outcome {
    let family = &report.families[0];
    ensure(family.passed, || describe_failures(report, 0))?;
    ensure(family.checked > 0, || "no cells checked".into())?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("sweep took {elapsed:?}")
    })?;
    Ok(format!(
        "{} cells agree with the oracle in {:.1?}",
        family.checked, elapsed
    ))
}

// Closed forms of B_0..B_5 in lambda.
fn apostol_small(n: usize, l: &Scalar) -> Scalar {
    let one = Scalar::one();
    let d = l - &one;
    let p = |k: i64| d.pow(k).unwrap();
    let c = |k: i64| Scalar::from(k);
    let l2 = l * l;
    let l3 = &l2 * l;
    match n {
        0 => Scalar::zero(),
        1 => &one / p(1),
        2 => -(c(2) * l) / p(2),
        3 => c(3) * l * (l + &one) / p(3),
        4 => -(c(4) * l * (&l2 + c(4) * l + &one)) / p(4),
        5 => c(5) * l * (&l3 + c(11) * &l2 + c(11) * l + &one) / p(5),
        _ => unreachable!(),
    }
}

fn criterion_4(lambdas: &[Scalar]) -> Outcome {
    for l in lambdas {
        let explicit = apostol_bernoulli(12, l).map_err(|e| e.to_string())?;
        let recurrence = apostol_bernoulli_by_recurrence(12, l).map_err(|e| e.to_string())?;
        for n in 0..=12 {
            ensure(explicit.get(n) == recurrence.get(n), || {
                format!(
                    "B_{n}({l}): explicit {} vs recurrence {}",
                    explicit.get(n),
                    recurrence.get(n)
                )
            })?;
        }
        for n in 0..=5 {
            let want = apostol_small(n, l);
            ensure(*explicit.get(n) == want, || {
                format!("B_{n}({l}) = {} vs {want}", explicit.get(n))
            })?;
        }
    }
    let minus = apostol_bernoulli(10, &s("-1")).map_err(|e| e.to_string())?;
    let euler = euler_at_zero(9);
    for n in 1..=10usize {
        let want = Scalar::from(-(euler[n - 1].clone() * n as u64) / 2u32);
        ensure(*minus.get(n) == want, || {
            format!("B_{n}(-1) = {} vs {want}", minus.get(n))
        })?;
    }
    Ok(format!(
        "{} lambdas, n <= 12; B_n(-1) Euler relation n <= 10",
        lambdas.len()
    ))
}

fn criterion_5(report: &SweepReport) -> Outcome {
    let family = &report.families[1];
    ensure(family.passed, || describe_failures(report, 1))?;
    ensure(family.checked > 0, || "no cells checked".into())?;
    Ok(format!(
        "{} (a, b, lambda) cells reduce exactly",
        family.checked
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for a in (2..=40u64).step_by(2) {
        for b in (3..=40u64).step_by(2) {
            let Ok(p) = CoprimePair::new(a, b) else {
                continue;
            };
            let (ai, bi) = (a as i64, b as i64);
            let ab = ai * bi;
            let s1 = Scalar::from(bi * (ab - ai - bi) + 1) / Scalar::from(4i64);
            let s2 = Scalar::from(ab * (bi - 1) * (2 * ab - ai - 3 * bi)) / Scalar::from(12i64);
            let lambda = s("-1");
            for (m, want) in [(1, s1), (2, s2)] {
                let oracle = sum_oracle(&p, m, &lambda, 10_000).map_err(|e| e.to_string())?;
                ensure(oracle == want, || {
                    format!("({a},{b}) m={m}: oracle {oracle} vs formula {want}")
                })?;
                let closed = sum_theorem_m1(&p, m, &lambda).map_err(|e| e.to_string())?;
                ensure(closed == want, || {
                    format!("({a},{b}) m={m}: closed {closed} vs formula {want}")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs, S_1 and S_2 at lambda = -1"))
}

// Representable numbers below ab by marking s a + t b.
fn sieve(a: u64, b: u64) -> Vec<bool> {
    let n = (a * b) as usize;
    let mut rep = vec![false; n];
    for s in 0..b {
        for t in 0..a {
            let v = (s * a + t * b) as usize;
            if v < n {
                rep[v] = true;
            }
        }
    }
    rep
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for a in 2..=40u64 {
        for b in a + 1..=40 {
            let Ok(p) = CoprimePair::new(a, b) else {
                continue;
            };
            let rep = sieve(a, b);
            let gaps = gap_set(&p);
            let want: Vec<u64> = (1..a * b).filter(|&n| !rep[n as usize]).collect();
            ensure(gaps.as_slice() == want, || {
                format!("({a},{b}) gap set differs from sieve")
            })?;
            ensure(gaps.len() as u64 == (a - 1) * (b - 1) / 2, || {
                format!("({a},{b}) gap count")
            })?;
            let frob = (a * b - a - b) as i64;
            ensure(frobenius_number(&p) == frob, || {
                format!("({a},{b}) Frobenius number")
            })?;
            ensure(gaps.max() == Some(frob as u64), || {
                format!("({a},{b}) largest gap")
            })?;
            for n in 0..=frob as u64 {
                let m = frob as u64 - n;
                ensure(
                    gaps.contains(n) != gaps.contains(m) || n == 0 || m == 0,
                    || format!("({a},{b}) self-complementarity fails at {n}"),
                )?;
            }
            let f = gap_polynomial(&p);
            let (g, h) = gh_polynomials(&p);
            let fh: IntPolynomial = f.polynomial().mul(&h);
            ensure(fh == g, || format!("({a},{b}) g != f h"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} pairs: sieve, count, Frobenius, symmetry, g = f h"
    ))
}

fn criterion_8() -> Outcome {
    let p = pair(1009, 1013);
    let row = bench_pair(&p, 2, &s("1/2"), 2_000_000).map_err(|e| e.to_string())?;
    let closed = row.closed_microseconds.ok_or("no closed form ran")?;
    let oracle = row.oracle_microseconds.ok_or("oracle skipped")?;
    let speedup = row.speedup().unwrap_or(0.0);
    ensure(speedup >= 10.0, || {
        format!("closed {closed} us vs oracle {oracle} us, speedup {speedup:.1}")
    })?;
    Ok(format!(
        "closed {closed} us, oracle {oracle} us, speedup {speedup:.0}x, values equal"
    ))
}

fn main() -> ExitCode {
    let config = SweepConfig::default();
    let (report, sweep_time) = timed(|| run_sweep(&config));
    let lambdas = config.lambdas.clone();

    let results: Vec<(&str, Outcome)> = vec![
        ("1 worked values", criterion_1()),
        ("2 gap sets", criterion_2()),
        (
            "3 method equivalence sweep",
            criterion_3(&report, sweep_time),
        ),
        ("4 Apostol-Bernoulli", criterion_4(&lambdas)),
        ("5 theorem_m reduces to theorem1", criterion_5(&report)),
        ("6 lambda = -1 corollary", criterion_6()),
        ("7 structural invariants", criterion_7()),
        ("8 bench (1009, 1013)", criterion_8()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
