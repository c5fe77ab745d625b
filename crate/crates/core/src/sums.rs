//! Weighted Sylvester sums `S_m(lambda; a, b) = sum_{n in NR(a,b)} lambda^(n-1) n^m`.
//!
//! Each method is an independent route to the same number:
//!
//! | method              | applies when                                     |
//! |---------------------|--------------------------------------------------|
//! | `oracle`            | `ab` within the oracle cap                        |
//! | `derivative`        | always                                           |
//! | `theorem1`          | `m = 1`, `lambda^a != 1`, `lambda^b != 1`        |
//! | `s2_closed`         | `m = 2`, `lambda^a != 1`, `lambda^b != 1`        |
//! | `theorem_m`         | `lambda^a != 1`, `lambda^b != 1`                 |
//! | `theorem_m1`        | `lambda != 1`, exactly one of `lambda^a`, `lambda^b` is 1 |
//! | `classical_lambda1` | `lambda = 1`, `m <= 2`                           |
//!
//! For a degenerate pair (one modulus equal to 1) there are no gaps and every
//! method returns zero.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complete, Integer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Rational, Scalar, SurdInt};
use crate::semigroup::{gap_polynomial, gap_set, CoprimePair};
use crate::special::{apostol_bernoulli, bernoulli, binomial, StirlingTable};

pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Theorem1,
    S2Closed,
    Derivative,
    TheoremM,
    TheoremM1,
    ClassicalLambda1,
    Oracle,
    All,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Auto,
        Method::Theorem1,
        Method::S2Closed,
        Method::Derivative,
        Method::TheoremM,
        Method::TheoremM1,
        Method::ClassicalLambda1,
        Method::Oracle,
        Method::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Theorem1 => "theorem1",
            Method::S2Closed => "s2_closed",
            Method::Derivative => "derivative",
            Method::TheoremM => "theorem_m",
            Method::TheoremM1 => "theorem_m1",
            Method::ClassicalLambda1 => "classical_lambda1",
            Method::Oracle => "oracle",
            Method::All => "all",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .iter()
            .find(|m| m.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumRequest {
    pub pair: CoprimePair,
    pub m: u32,
    pub lambda: Scalar,
    pub method: Method,
    pub oracle_cap: u64,
}

impl SumRequest {
    pub fn new(pair: CoprimePair, m: u32, lambda: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(SumRequest {
            pair,
            m,
            lambda,
            method: Method::Auto,
            oracle_cap: DEFAULT_ORACLE_CAP,
        })
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_oracle_cap(mut self, cap: u64) -> Self {
        self.oracle_cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: Scalar,
    pub method_used: Method,
    pub elapsed: Duration,
    /// True only when the oracle took part and every method agreed.
    pub cross_checked: bool,
    /// Every `(method, value)` computed; a single entry unless `method = all`.
    pub evaluations: Vec<(Method, Scalar)>,
}

/// `X1 = (a+b) lambda^(a+b) - a lambda^a - b lambda^b` and the same with
/// squared coefficients for `X2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryX {
    pub x1: Scalar,
    pub x2: Scalar,
}

impl AuxiliaryX {
    pub fn new(pair: &CoprimePair, lambda: &Scalar) -> Result<Self> {
        let (a, b) = (pair.a(), pair.b());
        let la = lambda.pow(a as i64)?;
        let lb = lambda.pow(b as i64)?;
        let lab = &la * &lb;
        let x1 = &lab * Scalar::from(a + b) - &la * Scalar::from(a) - &lb * Scalar::from(b);
        let x2 = &lab * Scalar::from((a + b) * (a + b))
            - &la * Scalar::from(a * a)
            - &lb * Scalar::from(b * b);
        Ok(AuxiliaryX { x1, x2 })
    }
}

fn nonzero(lambda: &Scalar) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(())
}

/// `(lambda^a == 1, lambda^b == 1)`, decided by exact comparison.
pub fn unit_powers(pair: &CoprimePair, lambda: &Scalar) -> Result<(bool, bool)> {
    Ok((
        lambda.pow(pair.a() as i64)?.is_one(),
        lambda.pow(pair.b() as i64)?.is_one(),
    ))
}

fn require_generic_powers(method: Method, pair: &CoprimePair, lambda: &Scalar) -> Result<()> {
    let (ua, ub) = unit_powers(pair, lambda)?;
    if ua || ub {
        return Err(Error::DegeneratePower {
            method,
            lambda: lambda.clone(),
            exponent: if ua { pair.a() } else { pair.b() },
        });
    }
    Ok(())
}

fn int_pow(base: u64, exp: i64) -> Rational {
    let r = Rational::from(base);
    if exp >= 0 {
        r.pow(exp as u32)
    } else {
        r.pow(exp as i32)
    }
}

/// Direct summation over the gap set.
///
/// With `lambda = P / L` the gaps `g_1 < ... < g_k` are folded from the top as
/// `H <- H P^d + g^m L^(g_k - g)`, so that the sum is
/// `P^(g_1 - 1) H / L^(g_k - 1)` and no intermediate fraction is reduced.
pub fn sum_oracle(pair: &CoprimePair, m: u32, lambda: &Scalar, cap: u64) -> Result<Scalar> {
    nonzero(lambda)?;
    let product = pair.product();
    if product > cap {
        return Err(Error::OracleCapExceeded { product, cap });
    }
    let gaps = gap_set(pair);
    let gaps = gaps.as_slice();
    let (Some(&first), Some(&last)) = (gaps.first(), gaps.last()) else {
        return Ok(Scalar::zero());
    };
    let (p, l) = lambda.homogeneous();
    let d = lambda.radicand().unwrap_or(0);

    let step_cache = |step: u64| (p.pow(step, d), l.clone().pow(step as u32));
    let mut cache: Vec<Option<(SurdInt, Integer)>> = Vec::new();
    let mut h = SurdInt::integer(Integer::from(last).pow(m));
    let mut l_pow = Integer::from(1);
    for window in gaps.windows(2).rev() {
        let (g, next) = (window[0], window[1]);
        let step = (next - g) as usize;
        if cache.len() <= step {
            cache.resize(step + 1, None);
        }
        let (p_step, l_step) = cache[step].get_or_insert_with(|| step_cache(step as u64));
        l_pow *= &*l_step;
        h = h.mul(p_step, d);
        h.re += Integer::from(g).pow(m) * &l_pow;
    }
    let numerator = h.mul(&p.pow(first - 1, d), d);
    let denominator = l.pow((last - 1) as u32);
    Ok(Scalar::from_homogeneous(
        numerator,
        denominator,
        lambda.radicand(),
    ))
}

/// Closed form for `m = 1`:
///
/// ```text
/// 1/(lambda-1)^2 + ab lambda^(ab-1) / ((lambda^a-1)(lambda^b-1))
///   - (lambda^(ab)-1) X1 / (lambda (lambda^a-1)^2 (lambda^b-1)^2)
/// ```
pub fn sum_theorem1(pair: &CoprimePair, lambda: &Scalar) -> Result<Scalar> {
    nonzero(lambda)?;
    if pair.is_degenerate() {
        return Ok(Scalar::zero());
    }
    require_generic_powers(Method::Theorem1, pair, lambda)?;
    let (a, b) = (pair.a(), pair.b());
    let ab = a * b;
    let one = Scalar::one();
    let u = lambda.pow(a as i64)? - &one;
    let v = lambda.pow(b as i64)? - &one;
    let lab1 = lambda.pow(ab as i64 - 1)?;
    let w = &lab1 * lambda - &one;
    let x = AuxiliaryX::new(pair, lambda)?;
    let uv = &u * &v;

    let t1 = (lambda - &one).pow(-2)?;
    let t2 = Scalar::from(ab) * &lab1 / &uv;
    let t3 = &w * &x.x1 / (lambda * &uv * &uv);
    Ok(t1 + t2 - t3)
}

/// Closed form for `m = 2`:
///
/// ```text
/// -(lambda+1)/(lambda-1)^3 + a^2 b^2 lambda^(ab-1) / (U V)
///   - (2 ab lambda^(ab) X1 + (lambda^(ab)-1) X2) / (lambda U^2 V^2)
///   + 2 (lambda^(ab)-1) X1^2 / (lambda U^3 V^3)
/// ```
///
/// with `U = lambda^a - 1`, `V = lambda^b - 1`. This is `lambda f'' + f'`
/// worked out from the `m = 1` closed form.
pub fn sum_s2_closed(pair: &CoprimePair, lambda: &Scalar) -> Result<Scalar> {
    nonzero(lambda)?;
    if pair.is_degenerate() {
        return Ok(Scalar::zero());
    }
    require_generic_powers(Method::S2Closed, pair, lambda)?;
    let (a, b) = (pair.a(), pair.b());
    let ab = a * b;
    let one = Scalar::one();
    let u = lambda.pow(a as i64)? - &one;
    let v = lambda.pow(b as i64)? - &one;
    let lab1 = lambda.pow(ab as i64 - 1)?;
    let lab = &lab1 * lambda;
    let w = &lab - &one;
    let AuxiliaryX { x1, x2 } = AuxiliaryX::new(pair, lambda)?;
    let uv = &u * &v;
    let uv2 = &uv * &uv;

    let t1 = (lambda + &one) / (lambda - &one).pow(3)?;
    let t2 = Scalar::from(ab * ab) * &lab1 / &uv;
    let t3 = (Scalar::from(2 * ab) * &lab * &x1 + &w * &x2) / (lambda * &uv2);
    let t4 = Scalar::from(2u64) * &w * &x1 * &x1 / (lambda * &uv2 * &uv);
    Ok(t2 - t1 - t3 + t4)
}

/// Coefficients `{m over k}` for `k = 1..=m`, so that
/// `S_m = sum_k {m over k} lambda^(k-1) f^(k)(lambda)`.
pub fn stirling_weights(m: u32) -> Vec<Integer> {
    let table = StirlingTable::new(m as usize);
    (1..=m as usize).map(|k| table.get(m as usize, k)).collect()
}

/// Derivative route: `n^m` expands into falling factorials, and each falling
/// factorial of the exponent is a derivative of the gap polynomial.
pub fn sum_derivative(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Result<Scalar> {
    nonzero(lambda)?;
    let f = gap_polynomial(pair);
    let f = f.polynomial();
    if m == 0 {
        return Ok(f.derivative_eval(0, lambda) / lambda);
    }
    let mut total = Scalar::zero();
    let mut lambda_pow = Scalar::one();
    for (k, weight) in (1..=m).zip(stirling_weights(m)) {
        let term = f.derivative_eval(k, lambda) * &lambda_pow * Scalar::from(weight);
        total = total + term;
        lambda_pow = lambda_pow * lambda;
    }
    Ok(total)
}

/// Apostol-Bernoulli expansion valid when `lambda^a != 1` and `lambda^b != 1`.
pub fn sum_theorem_m(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Result<Scalar> {
    nonzero(lambda)?;
    if lambda.is_one() {
        return Err(Error::LambdaIsOne {
            method: Method::TheoremM,
        });
    }
    if pair.is_degenerate() {
        return Ok(Scalar::zero());
    }
    require_generic_powers(Method::TheoremM, pair, lambda)?;
    let (a, b) = (pair.a(), pair.b());
    let m = m as usize;
    let mu = m as u64;
    let la = lambda.pow(a as i64)?;
    let lb = lambda.pow(b as i64)?;
    let ta = apostol_bernoulli(m + 2, &la)?;
    let tb = apostol_bernoulli(m + 2, &lb)?;
    let tl = apostol_bernoulli(m + 1, lambda)?;

    let mut inner = Scalar::zero();
    for l in 0..=m {
        let lu = l as u64;
        let outer = Rational::from((binomial(mu, l as i64), Integer::from((lu + 1) * (lu + 2))));
        for i in 0..=l + 2 {
            let (x, y) = (ta.get(i), tb.get(l + 2 - i));
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let iu = i as i64;
            let coeff = (&outer * binomial(lu + 2, iu)).complete()
                * int_pow(a, mu as i64 - lu as i64 + iu - 1)
                * int_pow(b, mu as i64 - iu + 1);
            inner = inner + Scalar::from(coeff) * x * y;
        }
    }
    let part1 = lambda.pow((a * b) as i64 - 1)? * inner;

    let mut single = Scalar::zero();
    for i in 0..=m + 2 {
        let (x, y) = (ta.get(i), tb.get(m + 2 - i));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let iu = i as i64;
        let coeff = Rational::from(binomial(mu + 2, iu))
            * int_pow(a, iu - 1)
            * int_pow(b, mu as i64 - iu + 1);
        single = single + Scalar::from(coeff) * x * y;
    }
    let part2 = single / (Scalar::from((mu + 1) * (mu + 2)) * lambda);
    let part3 = tl.get(m + 1) / (Scalar::from(mu + 1) * lambda);
    Ok(part1 - part2 - part3)
}

/// Expansion for the case where exactly one of `lambda^a`, `lambda^b` is 1.
/// When `lambda^b = 1` the moduli are swapped first (the sum is symmetric).
pub fn sum_theorem_m1(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Result<Scalar> {
    nonzero(lambda)?;
    if lambda.is_one() {
        return Err(Error::LambdaIsOne {
            method: Method::TheoremM1,
        });
    }
    if pair.is_degenerate() {
        return Ok(Scalar::zero());
    }
    let pair = match unit_powers(pair, lambda)? {
        (true, false) => *pair,
        (false, true) => pair.swapped(),
        (true, true) => unreachable!("lambda^a = lambda^b = 1 forces lambda = 1 for coprime a, b"),
        (false, false) => {
            return Err(Error::NoDegeneratePower {
                a: pair.a(),
                b: pair.b(),
                lambda: lambda.clone(),
            })
        }
    };
    let (a, b) = (pair.a(), pair.b());
    let m = m as usize;
    let mu = m as i64;
    let bern = bernoulli(m + 1);
    let tb = apostol_bernoulli(m + 1, &lambda.pow(b as i64)?)?;
    let tl = apostol_bernoulli(m + 1, lambda)?;

    let mut total = Scalar::zero();
    for l in 0..=m + 1 {
        let li = l as i64;
        let denom = Integer::from((mu - li + 2) * (mu + 1));
        let outer = Rational::from((binomial(mu as u64 + 1, li), denom));
        for i in 0..=l {
            let bi = bern.get(i);
            let y = tb.get(l - i);
            if bi.is_zero() || y.is_zero() {
                continue;
            }
            let ii = i as i64;
            let coeff = (&outer * binomial(l as u64, ii)).complete()
                * int_pow(a, mu - li + ii + 1)
                * int_pow(b, mu - ii + 1)
                * bi;
            total = total + Scalar::from(coeff) * y;
        }
    }
    let part1 = total / lambda;
    let part2 = tl.get(m + 1) / (Scalar::from(mu as u64 + 1) * lambda);
    Ok(part1 - part2)
}

/// Classical unweighted sums for `m <= 2`.
pub fn sum_classical_lambda1(pair: &CoprimePair, m: u32) -> Result<Rational> {
    let a = Integer::from(pair.a());
    let b = Integer::from(pair.b());
    let ab = (&a * &b).complete();
    let base = (&a - 1u32).complete() * (&b - 1u32).complete();
    Ok(match m {
        0 => Rational::from((base, 2)),
        1 => Rational::from((base * (Integer::from(2u32 * &ab) - &a - &b - 1u32), 12)),
        2 => Rational::from((base * &ab * ((&ab - &a).complete() - &b), 12)),
        m => return Err(Error::ClassicalUnsupported { m }),
    })
}

/// The `lambda = -1` closed forms for one even and one odd modulus:
/// `S_1 = (b(ab-a-b)+1)/4` and `S_2 = ab(b-1)(2ab-a-3b)/12` with `a` even.
/// `None` outside `m in {1, 2}` or when the parities do not fit.
pub fn corollary_minus_one(pair: &CoprimePair, m: u32) -> Option<Rational> {
    let pair = match (pair.a() % 2, pair.b() % 2) {
        (0, 1) => *pair,
        (1, 0) => pair.swapped(),
        _ => return None,
    };
    let a = Integer::from(pair.a());
    let b = Integer::from(pair.b());
    let ab = (&a * &b).complete();
    match m {
        1 => Some(Rational::from((
            &b * ((&ab - &a).complete() - &b) + 1u32,
            4,
        ))),
        2 => {
            let t = Integer::from(2u32 * &ab) - &a - Integer::from(3u32 * &b);
            Some(Rational::from((ab * (&b - 1u32).complete() * t, 12)))
        }
        _ => None,
    }
}

/// `T_m = sum (-1)^n n^m = -S_m(-1)`.
pub fn alternating_sum(pair: &CoprimePair, m: u32) -> Result<Scalar> {
    let req = SumRequest::new(*pair, m, Scalar::from(-1i64))?;
    Ok(-sylvester_sum(&req)?.value)
}

/// Methods whose preconditions hold for this input, in a fixed order.
pub fn applicable_methods(
    pair: &CoprimePair,
    m: u32,
    lambda: &Scalar,
    oracle_cap: u64,
) -> Result<Vec<Method>> {
    nonzero(lambda)?;
    let mut methods = Vec::new();
    if lambda.is_one() {
        if m <= 2 {
            methods.push(Method::ClassicalLambda1);
        }
    } else {
        match unit_powers(pair, lambda)? {
            (false, false) => {
                if m == 1 {
                    methods.push(Method::Theorem1);
                }
                if m == 2 {
                    methods.push(Method::S2Closed);
                }
                methods.push(Method::TheoremM);
            }
            _ => methods.push(Method::TheoremM1),
        }
    }
    methods.push(Method::Derivative);
    if pair.product() <= oracle_cap {
        methods.push(Method::Oracle);
    }
    Ok(methods)
}

/// The method `auto` resolves to.
pub fn auto_method(pair: &CoprimePair, m: u32, lambda: &Scalar) -> Result<Method> {
    nonzero(lambda)?;
    if lambda.is_one() {
        return Ok(if m <= 2 {
            Method::ClassicalLambda1
        } else {
            Method::Derivative
        });
    }
    let (ua, ub) = unit_powers(pair, lambda)?;
    Ok(if ua || ub {
        Method::TheoremM1
    } else {
        match m {
            0 => Method::Derivative,
            1 => Method::Theorem1,
            _ => Method::TheoremM,
        }
    })
}

/// Evaluates a single concrete method (not `auto` or `all`).
pub fn evaluate(method: Method, req: &SumRequest) -> Result<Scalar> {
    let (pair, m, lambda) = (&req.pair, req.m, &req.lambda);
    match method {
        Method::Theorem1 => sum_theorem1(pair, lambda),
        Method::S2Closed => sum_s2_closed(pair, lambda),
        Method::Derivative => sum_derivative(pair, m, lambda),
        Method::TheoremM => sum_theorem_m(pair, m, lambda),
        Method::TheoremM1 => sum_theorem_m1(pair, m, lambda),
        Method::ClassicalLambda1 => {
            if !lambda.is_one() {
                return Err(Error::LambdaNotOne {
                    method: Method::ClassicalLambda1,
                });
            }
            sum_classical_lambda1(pair, m).map(Scalar::from)
        }
        Method::Oracle => sum_oracle(pair, m, lambda, req.oracle_cap),
        Method::Auto => evaluate(auto_method(pair, m, lambda)?, req),
        Method::All => run_all(req).map(|r| r.value),
    }
}

fn run_all(req: &SumRequest) -> Result<SumResult> {
    let start = Instant::now();
    let methods = applicable_methods(&req.pair, req.m, &req.lambda, req.oracle_cap)?;
    let evaluations = methods
        .par_iter()
        .map(|&method| evaluate(method, req).map(|v| (method, v)))
        .collect::<Result<Vec<_>>>()?;
    let value = evaluations[0].1.clone();
    if evaluations.iter().any(|(_, v)| *v != value) {
        return Err(Error::Disagreement {
            values: evaluations,
        });
    }
    let cross_checked = methods.contains(&Method::Oracle);
    Ok(SumResult {
        value,
        method_used: Method::All,
        elapsed: start.elapsed(),
        cross_checked,
        evaluations,
    })
}

/// Dispatches a request. `auto` picks the cheapest applicable closed form;
/// `all` runs every applicable method and fails on any disagreement.
pub fn sylvester_sum(req: &SumRequest) -> Result<SumResult> {
    nonzero(&req.lambda)?;
    match req.method {
        Method::All => run_all(req),
        method => {
            let start = Instant::now();
            let method = if method == Method::Auto {
                auto_method(&req.pair, req.m, &req.lambda)?
            } else {
                method
            };
            let value = evaluate(method, req)?;
            Ok(SumResult {
                evaluations: vec![(method, value.clone())],
                value,
                method_used: method,
                elapsed: start.elapsed(),
                cross_checked: false,
            })
        }
    }
}
