//! Cross-validation sweeps over a grid of `(a, b, m, lambda)` cells.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::numeric::{parse_scalar, Scalar};
use crate::semigroup::CoprimePair;
use crate::sums::{
    applicable_methods, corollary_minus_one, evaluate, sum_theorem1, sum_theorem_m, sum_theorem_m1,
    sylvester_sum, unit_powers, Method, SumRequest, DEFAULT_ORACLE_CAP,
};

pub const DEFAULT_LAMBDAS: [&str; 7] = ["2", "1/2", "-1", "-5/3", "5", "sqrt(2)", "1+sqrt(2)"];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub amax: u64,
    pub bmax: u64,
    pub mmax: u32,
    pub lambdas: Vec<Scalar>,
    pub oracle_cap: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            amax: 25,
            bmax: 25,
            mmax: 6,
            lambdas: DEFAULT_LAMBDAS
                .iter()
                .map(|t| parse_scalar(t).expect("default lambdas parse"))
                .collect(),
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// Coprime pairs `2 <= a <= amax`, `a < b <= bmax`.
pub fn sweep_pairs(amax: u64, bmax: u64) -> Vec<CoprimePair> {
    (2..=amax)
        .flat_map(|a| (a + 1..=bmax).filter_map(move |b| CoprimePair::new(a, b).ok()))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CellFailure {
    pub a: u64,
    pub b: u64,
    pub m: u32,
    pub lambda: String,
    pub detail: String,
    /// `(method, value)` pairs in canonical text.
    pub values: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub name: &'static str,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<CellFailure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub passed: bool,
    pub families: Vec<FamilyReport>,
}

fn failure(
    pair: &CoprimePair,
    m: u32,
    lambda: &Scalar,
    detail: String,
    values: &[(Method, Scalar)],
) -> CellFailure {
    CellFailure {
        a: pair.a(),
        b: pair.b(),
        m,
        lambda: lambda.to_string(),
        detail,
        values: values
            .iter()
            .map(|(method, v)| (method.to_string(), v.to_string()))
            .collect(),
    }
}

type Check = Option<Result<(), CellFailure>>;

fn run_family<F>(name: &'static str, cells: &[(CoprimePair, u32, Scalar)], check: F) -> FamilyReport
where
    F: Fn(&CoprimePair, u32, &Scalar) -> Check + Sync,
{
    let outcomes: Vec<Check> = cells.par_iter().map(|(p, m, l)| check(p, *m, l)).collect();
    let checked = outcomes.iter().filter(|o| o.is_some()).count();
    let failures: Vec<CellFailure> = outcomes
        .into_iter()
        .flatten()
        .filter_map(|o| o.err())
        .collect();
    FamilyReport {
        name,
        checked,
        passed: failures.is_empty(),
        failures,
    }
}

/// Every applicable method against the oracle.
fn check_equivalence(pair: &CoprimePair, m: u32, lambda: &Scalar, cap: u64) -> Check {
    let methods = match applicable_methods(pair, m, lambda, cap) {
        Ok(methods) => methods,
        Err(e) => return Some(Err(failure(pair, m, lambda, e.to_string(), &[]))),
    };
    let req = SumRequest::new(*pair, m, lambda.clone())
        .ok()?
        .with_oracle_cap(cap);
    let mut values = Vec::with_capacity(methods.len());
    for method in methods {
        match evaluate(method, &req) {
            Ok(v) => values.push((method, v)),
            Err(e) => {
                return Some(Err(failure(
                    pair,
                    m,
                    lambda,
                    format!("{method}: {e}"),
                    &values,
                )))
            }
        }
    }
    let first = &values[0].1;
    if values.iter().any(|(_, v)| v != first) {
        return Some(Err(failure(
            pair,
            m,
            lambda,
            "methods disagree".into(),
            &values,
        )));
    }
    Some(Ok(()))
}

fn check_reduction(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Check {
    if m != 1 || lambda.is_one() || unit_powers(pair, lambda).ok()? != (false, false) {
        return None;
    }
    let values = vec![
        (Method::TheoremM, sum_theorem_m(pair, 1, lambda).ok()?),
        (Method::Theorem1, sum_theorem1(pair, lambda).ok()?),
    ];
    Some(if values[0].1 == values[1].1 {
        Ok(())
    } else {
        Err(failure(
            pair,
            m,
            lambda,
            "theorem_m at m = 1 differs from theorem1".into(),
            &values,
        ))
    })
}

fn check_symmetry(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Check {
    let forward = SumRequest::new(*pair, m, lambda.clone()).ok()?;
    let backward = SumRequest::new(pair.swapped(), m, lambda.clone()).ok()?;
    let pair_result = |req: &SumRequest| -> Result<(Method, Scalar), Error> {
        let r = sylvester_sum(req)?;
        Ok((r.method_used, r.value))
    };
    Some(match (pair_result(&forward), pair_result(&backward)) {
        (Ok(x), Ok(y)) if x.1 == y.1 => Ok(()),
        (Ok(x), Ok(y)) => Err(failure(pair, m, lambda, "S(a,b) != S(b,a)".into(), &[x, y])),
        (Err(e), _) | (_, Err(e)) => Err(failure(pair, m, lambda, e.to_string(), &[])),
    })
}

fn check_corollary(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Check {
    if *lambda != Scalar::from(-1i64) {
        return None;
    }
    let expected = Scalar::from(corollary_minus_one(pair, m)?);
    let value = match sum_theorem_m1(pair, m, lambda) {
        Ok(v) => v,
        Err(e) => return Some(Err(failure(pair, m, lambda, e.to_string(), &[]))),
    };
    Some(if value == expected {
        Ok(())
    } else {
        Err(failure(
            pair,
            m,
            lambda,
            format!("corollary value {expected}"),
            &[(Method::TheoremM1, value)],
        ))
    })
}

pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let pairs = sweep_pairs(config.amax, config.bmax);
    let cells: Vec<(CoprimePair, u32, Scalar)> = pairs
        .iter()
        .flat_map(|p| {
            (0..=config.mmax)
                .flat_map(move |m| config.lambdas.iter().map(move |l| (*p, m, l.clone())))
        })
        .filter(|(_, _, l)| !l.is_zero())
        .collect();
    let cap = config.oracle_cap;
    let families = vec![
        run_family("three-way equivalence", &cells, |p, m, l| {
            check_equivalence(p, m, l, cap)
        }),
        run_family(
            "theorem_m reduces to theorem1 at m = 1",
            &cells,
            check_reduction,
        ),
        run_family("symmetry in (a, b)", &cells, check_symmetry),
        run_family(
            "lambda = -1 corollary (one even modulus)",
            &cells,
            check_corollary,
        ),
    ];
    SweepReport {
        passed: families.iter().all(|f| f.passed),
        families,
    }
}
