//! Wall-clock comparison of the closed form, the derivative route and the oracle.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::semigroup::CoprimePair;
use crate::sums::{
    sum_classical_lambda1, sum_derivative, sum_oracle, sum_theorem_m, sum_theorem_m1, unit_powers,
    Method,
};

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub a: u64,
    pub b: u64,
    pub m: u32,
    pub lambda: String,
    /// `None` when no closed form covers the input (`lambda = 1`, `m >= 3`).
    pub closed_method: Option<Method>,
    pub closed_microseconds: Option<u128>,
    pub derivative_microseconds: u128,
    /// `None` when `ab` exceeds the oracle cap.
    pub oracle_microseconds: Option<u128>,
    pub value_bits: u64,
}

impl BenchRow {
    /// Oracle time over closed-form time, when both ran.
    pub fn speedup(&self) -> Option<f64> {
        let closed = self.closed_microseconds? as f64;
        let oracle = self.oracle_microseconds? as f64;
        Some(oracle / closed.max(1.0))
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed()))
}

/// The closed form that covers `(pair, m, lambda)`, if any.
pub fn closed_method(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Result<Option<Method>> {
    if lambda.is_one() {
        return Ok((m <= 2).then_some(Method::ClassicalLambda1));
    }
    Ok(Some(match unit_powers(pair, lambda)? {
        (false, false) => Method::TheoremM,
        _ => Method::TheoremM1,
    }))
}

/// Times each route once and fails with [`Error::Disagreement`] unless all
/// values coincide.
pub fn bench_pair(
    pair: &CoprimePair,
    m: u32,
    lambda: &Scalar,
    oracle_cap: u64,
) -> Result<BenchRow> {
    let closed = closed_method(pair, m, lambda)?;
    let mut values: Vec<(Method, Scalar)> = Vec::new();

    let mut closed_time = None;
    if let Some(method) = closed {
        let (v, t) = timed(|| match method {
            Method::TheoremM => sum_theorem_m(pair, m, lambda),
            Method::TheoremM1 => sum_theorem_m1(pair, m, lambda),
            _ => sum_classical_lambda1(pair, m).map(Scalar::from),
        })?;
        values.push((method, v));
        closed_time = Some(t.as_micros());
    }

    let (v, t) = timed(|| sum_derivative(pair, m, lambda))?;
    values.push((Method::Derivative, v));
    let derivative_time = t.as_micros();

    let mut oracle_time = None;
    if pair.product() <= oracle_cap {
        let (v, t) = timed(|| sum_oracle(pair, m, lambda, oracle_cap))?;
        values.push((Method::Oracle, v));
        oracle_time = Some(t.as_micros());
    }

    let first = &values[0].1;
    if values.iter().any(|(_, v)| v != first) {
        return Err(Error::Disagreement { values });
    }
    let bits = match first {
        Scalar::Rational(r) => {
            r.numer().significant_bits() as u64 + r.denom().significant_bits() as u64
        }
        Scalar::Quad(q) => {
            q.rational_part().numer().significant_bits() as u64
                + q.surd_part().numer().significant_bits() as u64
        }
    };
    Ok(BenchRow {
        a: pair.a(),
        b: pair.b(),
        m,
        lambda: lambda.to_string(),
        closed_method: closed,
        closed_microseconds: closed_time,
        derivative_microseconds: derivative_time,
        oracle_microseconds: oracle_time,
        value_bits: bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::parse_scalar;

    #[test]
    fn small_pair_all_routes() {
        let pair = CoprimePair::new(5, 7).unwrap();
        let row = bench_pair(&pair, 2, &parse_scalar("1/2").unwrap(), 1000).unwrap();
        assert_eq!(row.closed_method, Some(Method::TheoremM));
        assert!(row.oracle_microseconds.is_some());
        assert!(row.speedup().is_some());
    }

    #[test]
    fn cap_skips_oracle() {
        let pair = CoprimePair::new(5, 7).unwrap();
        let row = bench_pair(&pair, 1, &Scalar::from(-1i64), 10).unwrap();
        assert_eq!(row.oracle_microseconds, None);
        assert_eq!(row.speedup(), None);
    }

    #[test]
    fn lambda_one_high_m_has_no_closed_form() {
        let pair = CoprimePair::new(4, 9).unwrap();
        let row = bench_pair(&pair, 4, &Scalar::one(), 1000).unwrap();
        assert_eq!(row.closed_method, None);
        let row = bench_pair(&pair, 2, &Scalar::from(-1i64), 1000).unwrap();
        assert_eq!(row.closed_method, Some(Method::TheoremM1));
    }
}
