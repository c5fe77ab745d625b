//! Binomials, Stirling numbers of the second kind, Bernoulli numbers, Euler
//! polynomial values at zero, and Apostol-Bernoulli numbers.

use rug::{Complete, Integer};

use crate::error::Error;
use crate::numeric::{Rational, Scalar};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::new();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Rows `0..=n_max` of the Stirling triangle `{n over k}`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = vec![Integer::new(); n + 1];
            for k in 1..=n {
                let carry = prev
                    .get(k)
                    .map(|s| (s * k as u64).complete())
                    .unwrap_or_default();
                row[k] = carry + &prev[k - 1];
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn get(&self, n: usize, k: usize) -> Integer {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Stirling number of the second kind, with `{0 over 0} = 1`.
pub fn stirling2(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    StirlingTable::new(n).get(n, k)
}

/// Classical Bernoulli numbers `B_0..=B_N` (with `B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }
}

pub fn bernoulli(n_max: usize) -> BernoulliTable {
    let mut values = vec![Rational::from(1)];
    for n in 1..=n_max {
        // sum_{k<=n} C(n+1,k) B_k = 0
        let mut acc = Rational::new();
        for (k, b) in values.iter().enumerate() {
            acc += (b * binomial(n as u64 + 1, k as i64)).complete();
        }
        values.push(-acc / (n as u64 + 1));
    }
    BernoulliTable { values }
}

/// `E_0(0)..=E_N(0)` from `2 E_n(0) + sum_{k<n} C(n,k) E_k(0) = 2 [n = 0]`.
pub fn euler_at_zero(n_max: usize) -> Vec<Rational> {
    let mut values: Vec<Rational> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = Rational::from(if n == 0 { 2 } else { 0 });
        for (k, e) in values.iter().enumerate() {
            acc -= (e * binomial(n as u64, k as i64)).complete();
        }
        values.push(acc / 2u32);
    }
    values
}

/// Apostol-Bernoulli numbers `B_0(lambda)..=B_N(lambda)`, the Taylor
/// coefficients (times `n!`) of `z / (lambda e^z - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApostolBernoulliTable {
    lambda: Scalar,
    values: Vec<Scalar>,
}

impl ApostolBernoulliTable {
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &Scalar {
        &self.values[n]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn reject_one(lambda: &Scalar) -> Result<(), Error> {
    if lambda.is_one() {
        return Err(Error::ApostolAtOne);
    }
    Ok(())
}

/// Explicit Stirling-number formula
///
/// ```text
/// B_n(lambda) = n * sum_{j=0}^{n-1} (-1)^j lambda^j (lambda-1)^(-j-1) j! {n-1 over j}
/// ```
///
/// The sum starts at `j = 0`; starting at `j = 1` would give `B_1 = 0`.
pub fn apostol_bernoulli(n_max: usize, lambda: &Scalar) -> Result<ApostolBernoulliTable, Error> {
    reject_one(lambda)?;
    let inv = (lambda - Scalar::one()).recip()?;
    let ratio = -(lambda * &inv);
    let stirling = StirlingTable::new(n_max.saturating_sub(1));

    // weights[j] = (-lambda/(lambda-1))^j * j! / (lambda-1)
    let mut weights = Vec::with_capacity(n_max);
    let mut w = inv;
    for j in 0..n_max {
        if j > 0 {
            w = &w * &ratio * Scalar::from(j as u64);
        }
        weights.push(w.clone());
    }

    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Scalar::zero());
    for n in 1..=n_max {
        let mut acc = Scalar::zero();
        for (j, w) in weights.iter().enumerate().take(n) {
            let s = stirling.get(n - 1, j);
            if s != 0 {
                acc = acc + w * Scalar::from(s);
            }
        }
        values.push(acc * Scalar::from(n as u64));
    }
    Ok(ApostolBernoulliTable {
        lambda: lambda.clone(),
        values,
    })
}

/// Same numbers from the generating function cleared of its denominator:
/// `(lambda-1) B_n + lambda sum_{k<n} C(n,k) B_k = [n = 1]`.
pub fn apostol_bernoulli_by_recurrence(
    n_max: usize,
    lambda: &Scalar,
) -> Result<ApostolBernoulliTable, Error> {
    reject_one(lambda)?;
    let denom = lambda - Scalar::one();
    let mut values: Vec<Scalar> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut acc = Scalar::zero();
        for (k, b) in values.iter().enumerate() {
            acc = acc + b * Scalar::from(binomial(n as u64, k as i64));
        }
        let delta = if n == 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        values.push((delta - lambda * acc) / &denom);
    }
    Ok(ApostolBernoulliTable {
        lambda: lambda.clone(),
        values,
    })
}
