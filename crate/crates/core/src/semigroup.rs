//! The semigroup generated by two coprime integers: representation counts,
//! the gap set `NR(a, b)`, the Frobenius number, and the gap polynomial
//! `f(x) = sum (1 - r(n)) x^n` together with its factorization `f = g / h`.

use std::collections::HashMap;

use rug::ops::Pow;
use rug::{Complete, Integer};

use crate::error::{Error, Result};
use crate::numeric::{Scalar, SurdInt};

/// A pair of positive, coprime moduli.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoprimePair {
    a: u64,
    b: u64,
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

impl CoprimePair {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroModulus { a, b });
        }
        let g = gcd(a, b);
        if g != 1 {
            return Err(Error::NotCoprime { a, b, gcd: g });
        }
        Ok(CoprimePair { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn swapped(&self) -> CoprimePair {
        CoprimePair {
            a: self.b,
            b: self.a,
        }
    }

    /// True when one modulus is 1, so every nonnegative integer is representable.
    pub fn is_degenerate(&self) -> bool {
        self.a == 1 || self.b == 1
    }

    pub fn product(&self) -> u64 {
        self.a * self.b
    }
}

/// Number of `(s, t) >= 0` with `s a + t b = n`.
pub fn representation_count(n: u64, pair: &CoprimePair) -> u64 {
    (0..=n / pair.a)
        .filter(|s| (n - s * pair.a).is_multiple_of(pair.b))
        .count() as u64
}

/// `(a-1)(b-1) - 1`, or `-1` for a degenerate pair (no gaps).
pub fn frobenius_number(pair: &CoprimePair) -> i64 {
    if pair.is_degenerate() {
        return -1;
    }
    ((pair.a - 1) * (pair.b - 1)) as i64 - 1
}

/// The positive integers not representable as `s a + t b`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSet {
    pair: CoprimePair,
    gaps: Vec<u64>,
}

impl GapSet {
    pub fn pair(&self) -> &CoprimePair {
        &self.pair
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.gaps.iter().copied()
    }
}

/// Builds `NR(a, b)` residue class by residue class: for `0 <= s < a` with
/// `r = b s mod a`, the gaps congruent to `r` are `a k + r` for
/// `0 <= k < (b s - r) / a`.
pub fn gap_set(pair: &CoprimePair) -> GapSet {
    let (a, b) = (pair.a, pair.b);
    let mut gaps = Vec::new();
    if !pair.is_degenerate() {
        gaps.reserve(((a - 1) * (b - 1) / 2) as usize);
        for s in 1..a {
            let bs = b * s;
            let r = bs % a;
            gaps.extend((0..(bs - r) / a).map(|k| a * k + r));
        }
        gaps.sort_unstable();
    }
    GapSet { pair: *pair, gaps }
}

/// Dense polynomial with machine-integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        IntPolynomial::new(out)
    }

    /// `p^(k)(lambda)`, evaluated exactly.
    pub fn derivative_eval(&self, k: u32, lambda: &Scalar) -> Scalar {
        poly_derivative_eval(self, k, lambda)
    }
}

/// `f(x) = sum_{n=0}^{ab-a-b} (1 - r(n)) x^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPolynomial {
    pair: CoprimePair,
    poly: IntPolynomial,
}

impl GapPolynomial {
    pub fn pair(&self) -> &CoprimePair {
        &self.pair
    }

    pub fn coefficients(&self) -> &[i64] {
        self.poly.coefficients()
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.poly
    }
}

/// The gap polynomial; identically zero for a degenerate pair.
pub fn gap_polynomial(pair: &CoprimePair) -> GapPolynomial {
    let gaps = gap_set(pair);
    let mut coeffs = Vec::new();
    if let Some(top) = gaps.max() {
        coeffs = vec![0i64; top as usize + 1];
        for n in gaps.iter() {
            coeffs[n as usize] = 1;
        }
    }
    GapPolynomial {
        pair: *pair,
        poly: IntPolynomial::new(coeffs),
    }
}

/// The numerator and denominator of `f = g / h`:
/// `g = sum_{k=1}^{b-1} (x^{ak} - x^k) / (x - 1)` (each term is the block
/// `x^k + ... + x^{ak-1}`) and `h = 1 + x + ... + x^{b-1}`.
pub fn gh_polynomials(pair: &CoprimePair) -> (IntPolynomial, IntPolynomial) {
    let (a, b) = (pair.a as usize, pair.b as usize);
    // difference array over the blocks [k, ak)
    let mut diff = vec![0i64; a * b + 1];
    for k in 1..b {
        if a * k > k {
            diff[k] += 1;
            diff[a * k] -= 1;
        }
    }
    let mut g = Vec::with_capacity(diff.len());
    let mut running = 0;
    for d in diff {
        running += d;
        g.push(running);
    }
    (IntPolynomial::new(g), IntPolynomial::new(vec![1; b]))
}

/// Exact `p^(k)(lambda)` from the coefficient vector: the coefficients
/// `c_n n (n-1) ... (n-k+1)` are summed against `lambda^(n-k)`.
pub fn poly_derivative_eval(p: &IntPolynomial, k: u32, lambda: &Scalar) -> Scalar {
    let k = k as usize;
    let coeffs = p.coefficients();
    if coeffs.len() <= k {
        return Scalar::zero();
    }
    let shifted: Vec<Integer> = coeffs[k..]
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if c == 0 {
                return Integer::new();
            }
            let n = (i + k) as u64;
            let mut falling = Integer::from(c);
            for j in 0..k as u64 {
                falling *= n - j;
            }
            falling
        })
        .collect();
    eval_dense(&shifted, lambda)
}

const LEAF: usize = 32;

/// `sum_n coeffs[n] lambda^n` by binary splitting over integers.
///
/// With `lambda = P / L` the sum is `V / L^(N-1)` where
/// `V = sum_n c_n P^n L^(N-1-n)`; halves combine as
/// `V = V_lo L^|hi| + P^|lo| V_hi`.
pub(crate) fn eval_dense(coeffs: &[Integer], lambda: &Scalar) -> Scalar {
    let Some(last) = coeffs.iter().rposition(|c| *c != 0) else {
        return Scalar::zero();
    };
    let coeffs = &coeffs[..=last];
    let (p, l) = lambda.homogeneous();
    let mut ctx = SplitContext {
        p,
        l,
        d: lambda.radicand().unwrap_or(0),
        p_pows: HashMap::new(),
        l_pows: HashMap::new(),
    };
    let v = ctx.split(coeffs);
    let den = ctx.l.clone().pow((coeffs.len() - 1) as u32);
    Scalar::from_homogeneous(v, den, lambda.radicand())
}

struct SplitContext {
    p: SurdInt,
    l: Integer,
    d: i64,
    p_pows: HashMap<usize, SurdInt>,
    l_pows: HashMap<usize, Integer>,
}

impl SplitContext {
    fn p_pow(&mut self, e: usize) -> SurdInt {
        if let Some(v) = self.p_pows.get(&e) {
            return v.clone();
        }
        let v = self.p.pow(e as u64, self.d);
        self.p_pows.insert(e, v.clone());
        v
    }

    fn l_pow(&mut self, e: usize) -> Integer {
        if let Some(v) = self.l_pows.get(&e) {
            return v.clone();
        }
        let v = self.l.clone().pow(e as u32);
        self.l_pows.insert(e, v.clone());
        v
    }

    fn split(&mut self, coeffs: &[Integer]) -> SurdInt {
        let n = coeffs.len();
        if n <= LEAF {
            // Horner from the top, carrying L^(n-1-i) alongside
            let mut acc = SurdInt::integer(coeffs[n - 1].clone());
            let mut lpow = Integer::from(1);
            for c in coeffs[..n - 1].iter().rev() {
                lpow *= &self.l;
                acc = acc.mul(&self.p, self.d);
                if *c != 0 {
                    acc.re += (c * &lpow).complete();
                }
            }
            return acc;
        }
        let mid = n / 2;
        let lo = self.split(&coeffs[..mid]);
        let hi = self.split(&coeffs[mid..]);
        let lscale = self.l_pow(n - mid);
        let pscale = self.p_pow(mid);
        let mut v = lo.scale(&lscale);
        v.add_assign(&hi.mul(&pscale, self.d));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::parse_scalar;

    fn pair(a: u64, b: u64) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(
            CoprimePair::new(4, 6),
            Err(Error::NotCoprime { gcd: 2, .. })
        ));
        assert!(matches!(
            CoprimePair::new(0, 3),
            Err(Error::ZeroModulus { .. })
        ));
        assert!(CoprimePair::new(1, 1).unwrap().is_degenerate());
    }

    #[test]
    fn representation_counts() {
        assert_eq!(representation_count(0, &pair(3, 17)), 1);
        assert_eq!(representation_count(31, &pair(3, 17)), 0);
        assert_eq!(representation_count(51, &pair(3, 17)), 2);
    }

    #[test]
    fn gap_sets_from_worked_examples() {
        assert_eq!(
            gap_set(&pair(3, 17)).as_slice(),
            &[1, 2, 4, 5, 7, 8, 10, 11, 13, 14, 16, 19, 22, 25, 28, 31]
        );
        assert_eq!(
            gap_set(&pair(4, 11)).as_slice(),
            &[1, 2, 3, 5, 6, 7, 9, 10, 13, 14, 17, 18, 21, 25, 29]
        );
        assert!(gap_set(&pair(1, 7)).is_empty());
        assert!(gap_set(&pair(7, 1)).is_empty());
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(frobenius_number(&pair(3, 17)), 31);
        assert_eq!(frobenius_number(&pair(4, 11)), 29);
        assert_eq!(frobenius_number(&pair(1, 9)), -1);
        assert_eq!(frobenius_number(&pair(2, 3)), 1);
    }

    #[test]
    fn gap_polynomials() {
        assert_eq!(gap_polynomial(&pair(2, 3)).coefficients(), &[0, 1]);
        assert_eq!(gap_polynomial(&pair(2, 5)).coefficients(), &[0, 1, 0, 1]);
        let f = gap_polynomial(&pair(3, 17));
        assert_eq!(f.coefficients()[16], 1);
        assert_eq!(f.coefficients()[17], 0);
        assert_eq!(f.coefficients().len(), 3 * 17 - 3 - 17 + 1);
        assert!(gap_polynomial(&pair(1, 4)).polynomial().is_zero());
    }

    #[test]
    fn g_and_h() {
        let (g, h) = gh_polynomials(&pair(2, 3));
        assert_eq!(h.coefficients(), &[1, 1, 1]);
        assert_eq!(g.coefficients(), &[0, 1, 1, 1]);
        let (g, h) = gh_polynomials(&pair(5, 7));
        assert_eq!(g.degree(), Some(5 * 7 - 5 - 1));
        assert_eq!(h.degree(), Some(6));
    }

    #[test]
    fn derivative_values() {
        let lambda = |t: &str| parse_scalar(t).unwrap();
        let f23 = gap_polynomial(&pair(2, 3));
        assert_eq!(
            f23.polynomial().derivative_eval(1, &lambda("7")),
            Scalar::one()
        );
        let f = gap_polynomial(&pair(3, 17));
        assert_eq!(
            f.polynomial().derivative_eval(1, &lambda("2")).to_string(),
            "37515351605"
        );
        let f25 = gap_polynomial(&pair(2, 5));
        assert_eq!(
            f25.polynomial().derivative_eval(2, &lambda("1")),
            Scalar::from(6i64)
        );
        assert_eq!(
            f25.polynomial().derivative_eval(4, &lambda("3")),
            Scalar::zero()
        );
    }

    #[test]
    fn dense_eval_matches_naive_horner() {
        let coeffs: Vec<Integer> = (0..200)
            .map(|i| Integer::from((i * 37 % 11) as i64 - 5))
            .collect();
        for text in ["-5/3", "1/2", "1+sqrt(2)", "2/3-1/5*sqrt(-7)", "1"] {
            let x = parse_scalar(text).unwrap();
            let mut naive = Scalar::zero();
            for c in coeffs.iter().rev() {
                naive = naive * &x + Scalar::from(c.clone());
            }
            assert_eq!(eval_dense(&coeffs, &x), naive, "lambda = {text}");
        }
    }
}
