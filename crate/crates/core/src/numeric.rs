//! Exact scalars: rationals and elements of a quadratic extension `Q(sqrt(d))`.
//!
//! A [`Scalar`] is either a plain [`Rational`] or a [`QuadRational`]
//! `x + y*sqrt(d)` with `y != 0`. Values are always kept canonical, so derived
//! equality is exact equality. Binary operations promote rationals into the
//! extension of the other operand; combining two different radicands is an
//! error ([`NumericError::IncompatibleRadicands`]).
//!
//! The operator impls (`+`, `-`, `*`, `/`) panic on incompatible radicands or
//! division by zero, the same way integer division panics. Use the `try_*`
//! methods where the operands are not known to be compatible.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Complete, Integer};
use thiserror::Error;

pub use rug::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("cannot parse scalar {input:?}: {reason}")]
    Syntax { input: String, reason: String },
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("radicand {0} is zero or a perfect square")]
    InvalidRadicand(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands sqrt({0}) and sqrt({1})")]
    IncompatibleRadicands(i64, i64),
    #[error("zero raised to the negative power {0}")]
    ZeroToNegativePower(i64),
}

/// `rational + surd * sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRational {
    rational: Rational,
    surd: Rational,
    radicand: i64,
}

impl QuadRational {
    pub fn new(rational: Rational, surd: Rational, radicand: i64) -> Result<Self, NumericError> {
        check_radicand(radicand)?;
        Ok(QuadRational {
            rational,
            surd,
            radicand,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn conj(&self) -> QuadRational {
        QuadRational {
            rational: self.rational.clone(),
            surd: (-&self.surd).complete(),
            radicand: self.radicand,
        }
    }

    /// `x^2 - d*y^2`; nonzero for every nonzero value because `d` is not a square.
    pub fn norm(&self) -> Rational {
        let x2 = self.rational.clone().square();
        let y2 = self.surd.clone().square();
        x2 - y2 * Integer::from(self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

/// An exact number from `Q` or `Q(sqrt(d))`, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadRational),
}

fn check_radicand(d: i64) -> Result<(), NumericError> {
    if d == 0 || (d > 0 && Integer::from(d).is_perfect_square()) {
        return Err(NumericError::InvalidRadicand(d));
    }
    Ok(())
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(Rational::new())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(Rational::from(1))
    }

    /// Builds `x + y*sqrt(d)`, collapsing to a rational when `y = 0`.
    pub fn quadratic(x: Rational, y: Rational, d: i64) -> Result<Scalar, NumericError> {
        check_radicand(d)?;
        Ok(Self::quad_unchecked(x, y, d))
    }

    fn quad_unchecked(x: Rational, y: Rational, d: i64) -> Scalar {
        if y.is_zero() {
            Scalar::Rational(x)
        } else {
            Scalar::Quad(QuadRational {
                rational: x,
                surd: y,
                radicand: d,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if *r == 1)
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Quad(q) => Some(q.radicand),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Quad(_) => None,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Quad(q) => &q.rational,
        }
    }

    fn common_radicand(&self, other: &Scalar) -> Result<Option<i64>, NumericError> {
        match (self.radicand(), other.radicand()) {
            (Some(d), Some(e)) if d != e => Err(NumericError::IncompatibleRadicands(d, e)),
            (Some(d), _) | (_, Some(d)) => Ok(Some(d)),
            (None, None) => Ok(None),
        }
    }

    fn surd_or_zero(&self) -> Rational {
        match self {
            Scalar::Rational(_) => Rational::new(),
            Scalar::Quad(q) => q.surd.clone(),
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar, NumericError> {
        Ok(match self.common_radicand(rhs)? {
            None => Scalar::Rational((self.rational_part() + rhs.rational_part()).complete()),
            Some(d) => Self::quad_unchecked(
                (self.rational_part() + rhs.rational_part()).complete(),
                self.surd_or_zero() + rhs.surd_or_zero(),
                d,
            ),
        })
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar, NumericError> {
        self.try_add(&rhs.neg_ref())
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar, NumericError> {
        let d = self.common_radicand(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational((x * y).complete()),
            (Scalar::Rational(x), Scalar::Quad(q)) | (Scalar::Quad(q), Scalar::Rational(x)) => {
                Self::quad_unchecked(
                    (x * &q.rational).complete(),
                    (x * &q.surd).complete(),
                    q.radicand,
                )
            }
            (Scalar::Quad(p), Scalar::Quad(q)) => {
                let d = d.expect("quadratic operands carry a radicand");
                let ac = (&p.rational * &q.rational).complete();
                let bd = (&p.surd * &q.surd).complete() * Integer::from(d);
                let ad = (&p.rational * &q.surd).complete();
                let bc = (&p.surd * &q.rational).complete();
                Self::quad_unchecked(ac + bd, ad + bc, d)
            }
        })
    }

    pub fn recip(&self) -> Result<Scalar, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.clone().recip()),
            Scalar::Quad(q) => {
                let n = q.norm();
                let c = q.conj();
                Self::quad_unchecked(c.rational / &n, c.surd / &n, q.radicand)
            }
        })
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, NumericError> {
        self.common_radicand(rhs)?;
        self.try_mul(&rhs.recip()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational((-r).complete()),
            Scalar::Quad(q) => Scalar::Quad(QuadRational {
                rational: (-&q.rational).complete(),
                surd: (-&q.surd).complete(),
                radicand: q.radicand,
            }),
        }
    }

    /// Exact integer power by binary exponentiation; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Scalar, NumericError> {
        if n < 0 {
            if self.is_zero() {
                return Err(NumericError::ZeroToNegativePower(n));
            }
            return self
                .recip()?
                .pow(n.checked_neg().expect("exponent overflow"));
        }
        let n = n as u64;
        if let Scalar::Rational(r) = self {
            if let Ok(e) = u32::try_from(n) {
                return Ok(Scalar::Rational(r.pow(e).complete()));
            }
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Splits the value as `(P, L)` with `P` an integral element `x + y*sqrt(d)`
    /// and `L > 0` an integer such that `self = P / L`.
    pub(crate) fn homogeneous(&self) -> (SurdInt, Integer) {
        match self {
            Scalar::Rational(r) => (SurdInt::integer(r.numer().clone()), r.denom().clone()),
            Scalar::Quad(q) => {
                let l = q.rational.denom().lcm_ref(q.surd.denom()).complete();
                let x = q.rational.numer() * (&l / q.rational.denom()).complete();
                let y = q.surd.numer() * (&l / q.surd.denom()).complete();
                (SurdInt { re: x, surd: y }, l)
            }
        }
    }

    pub(crate) fn from_homogeneous(p: SurdInt, den: Integer, d: Option<i64>) -> Scalar {
        let x = Rational::from((p.re, den.clone()));
        match d {
            Some(d) => Self::quad_unchecked(x, Rational::from((p.surd, den)), d),
            None => {
                debug_assert!(p.surd.is_zero());
                Scalar::Rational(x)
            }
        }
    }

    /// Correctly rounded decimal approximation with `digits` places after the
    /// point. Imaginary values (negative radicand) print as `re+imi`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = Integer::from(10).pow(digits as u32);
        match self {
            Scalar::Rational(r) => fixed_point(&round_rational(&(r * &scale).complete()), digits),
            Scalar::Quad(q) if q.radicand > 0 => {
                let x = (&q.rational * &scale).complete();
                let y = (&q.surd * &scale).complete();
                fixed_point(&round_real_quad(&x, &y, q.radicand), digits)
            }
            Scalar::Quad(q) => {
                let re = round_rational(&(&q.rational * &scale).complete());
                let y = (&q.surd * &scale).complete();
                let im = round_real_quad(&Rational::new(), &y, -q.radicand);
                let im_text = fixed_point(&im, digits);
                if im_text.starts_with('-') {
                    format!("{}{}i", fixed_point(&re, digits), im_text)
                } else {
                    format!("{}+{}i", fixed_point(&re, digits), im_text)
                }
            }
        }
    }
}

fn round_rational(r: &Rational) -> Integer {
    let (_, int) = r.clone().fract_round(Integer::new());
    int
}

// Sign of x + y*sqrt(d) - k for d > 0.
fn cmp_real_quad(x: &Rational, y: &Rational, d: i64, k: &Integer) -> Ordering {
    let c = (x - k).complete();
    // compare y*sqrt(d) against -c
    let target = -c;
    let ys = y.cmp0();
    let ts = target.cmp0();
    match (ys, ts) {
        (Ordering::Equal, _) => Rational::new().cmp(&target),
        (Ordering::Greater, Ordering::Less) | (Ordering::Greater, Ordering::Equal) => {
            Ordering::Greater
        }
        (Ordering::Less, Ordering::Greater) | (Ordering::Less, Ordering::Equal) => Ordering::Less,
        (Ordering::Greater, Ordering::Greater) => {
            (y.clone().square() * Integer::from(d)).cmp(&target.square())
        }
        (Ordering::Less, Ordering::Less) => target
            .square()
            .cmp(&(y.clone().square() * Integer::from(d))),
    }
}

// round(x + y*sqrt(d)) for d > 0; ties cannot occur since sqrt(d) is irrational.
fn round_real_quad(x: &Rational, y: &Rational, d: i64) -> Integer {
    let half = Rational::from((1, 2));
    let x = (x + &half).complete();
    let t = y.clone().square() * Integer::from(d);
    let root = (t.numer() * t.denom()).complete().sqrt() / t.denom();
    let mut k = x.clone().floor().numer()
        + if y.cmp0() == Ordering::Less {
            -root
        } else {
            root
        };
    // adjust the estimate until k <= value < k + 1
    while cmp_real_quad(&x, y, d, &k) == Ordering::Less {
        k -= 1;
    }
    while cmp_real_quad(&x, y, d, &(&k + 1u32).complete()) != Ordering::Less {
        k += 1;
    }
    k
}

fn fixed_point(value: &Integer, digits: usize) -> String {
    let negative = value.cmp0() == Ordering::Less;
    let mut s = value.clone().abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Integral element `re + surd*sqrt(d)` used for homogeneous evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SurdInt {
    pub re: Integer,
    pub surd: Integer,
}

impl SurdInt {
    pub fn integer(re: Integer) -> SurdInt {
        SurdInt {
            re,
            surd: Integer::new(),
        }
    }

    pub fn mul(&self, other: &SurdInt, d: i64) -> SurdInt {
        if self.surd.is_zero() && other.surd.is_zero() {
            return SurdInt::integer((&self.re * &other.re).complete());
        }
        let re = (&self.re * &other.re).complete()
            + (&self.surd * &other.surd).complete() * Integer::from(d);
        let surd = (&self.re * &other.surd).complete() + (&self.surd * &other.re).complete();
        SurdInt { re, surd }
    }

    pub fn scale(&self, k: &Integer) -> SurdInt {
        SurdInt {
            re: (&self.re * k).complete(),
            surd: (&self.surd * k).complete(),
        }
    }

    pub fn add_assign(&mut self, other: &SurdInt) {
        self.re += &other.re;
        self.surd += &other.surd;
    }

    pub fn pow(&self, mut e: u64, d: i64) -> SurdInt {
        if self.surd.is_zero() {
            if let Ok(e) = u32::try_from(e) {
                return SurdInt::integer(self.re.clone().pow(e));
            }
        }
        let mut result = SurdInt::integer(Integer::from(1));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, d);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, d);
            }
        }
        result
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(Rational::from(v))
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar::Rational(Rational::from(v))
    }
}

impl From<Integer> for Scalar {
    fn from(v: Integer) -> Self {
        Scalar::Rational(Rational::from(v))
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::Rational(v)
    }
}

impl From<QuadRational> for Scalar {
    fn from(q: QuadRational) -> Self {
        Scalar::quad_unchecked(q.rational, q.surd, q.radicand)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.cmp0() == Ordering::Less {
            write!(f, "{}{}*sqrt({})", self.rational, self.surd, self.radicand)
        } else {
            write!(f, "{}+{}*sqrt({})", self.rational, self.surd, self.radicand)
        }
    }
}

/// Parses the scalar grammar:
///
/// ```text
/// INT | INT "/" POSINT | [SIGNED_RAT ("+"|"-")] [RAT] ["*"] "sqrt(" INT ")"
/// ```
///
/// Whitespace is ignored anywhere. A bare leading sign on the surd term
/// (`-sqrt(2)`) is accepted.
pub fn parse_scalar(text: &str) -> Result<Scalar, NumericError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let syntax = |reason: &str| NumericError::Syntax {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(syntax("empty input"));
    }
    let Some(pos) = s.find("sqrt(") else {
        return parse_rational(&s, text);
    };
    let radicand_text = s[pos + 5..]
        .strip_suffix(')')
        .ok_or_else(|| syntax("expected ')' closing sqrt"))?;
    let radicand = parse_int(radicand_text).ok_or_else(|| syntax("radicand is not an integer"))?;
    let radicand = i64::try_from(&radicand).map_err(|_| syntax("radicand out of range"))?;
    check_radicand(radicand)?;

    let mut prefix = &s[..pos];
    prefix = prefix.strip_suffix('*').unwrap_or(prefix);
    if prefix.ends_with('*') {
        return Err(syntax("repeated '*'"));
    }
    // split off a rational part at the last sign that is not leading
    let split = prefix
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i);
    let (rational, sign, coeff) = match split {
        Some(i) => (
            parse_rational_part(&prefix[..i], text)?,
            &prefix[i..i + 1],
            &prefix[i + 1..],
        ),
        None => match prefix.as_bytes().first() {
            Some(b'+') | Some(b'-') => (Rational::new(), &prefix[..1], &prefix[1..]),
            _ => (Rational::new(), "+", prefix),
        },
    };
    if coeff.starts_with('+') || coeff.starts_with('-') {
        return Err(syntax("sign in surd coefficient"));
    }
    let mut surd = if coeff.is_empty() {
        Rational::from(1)
    } else {
        parse_rational_part(coeff, text)?
    };
    if sign == "-" {
        surd = -surd;
    }
    if surd.is_zero() {
        return Ok(Scalar::Rational(rational));
    }
    Ok(Scalar::quad_unchecked(rational, surd, radicand))
}

fn parse_int(s: &str) -> Option<Integer> {
    let digits = s
        .strip_prefix('-')
        .or_else(|| s.strip_prefix('+'))
        .unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Integer::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_rational_part(s: &str, original: &str) -> Result<Rational, NumericError> {
    match parse_rational(s, original)? {
        Scalar::Rational(r) => Ok(r),
        Scalar::Quad(_) => unreachable!(),
    }
}

fn parse_rational(s: &str, original: &str) -> Result<Scalar, NumericError> {
    let syntax = |reason: &str| NumericError::Syntax {
        input: original.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| syntax("numerator is not an integer"))?;
    let den = match den {
        None => Integer::from(1),
        Some(d) => {
            if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                return Err(syntax("denominator must be a positive integer"));
            }
            let d = Integer::from_str(d).map_err(|_| syntax("bad denominator"))?;
            if d.is_zero() {
                return Err(NumericError::ZeroDenominator(original.to_string()));
            }
            d
        }
    };
    Ok(Scalar::Rational(Rational::from((num, den))))
}

impl FromStr for Scalar {
    type Err = NumericError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Scalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(q("-5/3"), Scalar::Rational(Rational::from((-5, 3))));
        assert_eq!(q("1"), Scalar::one());
        assert_eq!(q(" 4 / 6 "), Scalar::Rational(Rational::from((2, 3))));
        assert_eq!(q("+7"), Scalar::from(7i64));
    }

    #[test]
    fn parses_quadratics() {
        let expected =
            Scalar::quadratic(Rational::from((3, 2)), Rational::from((1, 4)), 2).unwrap();
        assert_eq!(q("3/2+1/4*sqrt(2)"), expected);
        assert_eq!(q("3/2 + 1/4 sqrt(2)"), expected);
        assert_eq!(q("sqrt(2)").to_string(), "0+1*sqrt(2)");
        assert_eq!(q("-sqrt(2)").to_string(), "0-1*sqrt(2)");
        assert_eq!(q("1+sqrt(2)").to_string(), "1+1*sqrt(2)");
        assert_eq!(q("-1/2-3*sqrt(-3)").to_string(), "-1/2-3*sqrt(-3)");
        assert_eq!(q("2sqrt(8)").radicand(), Some(8));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_scalar("1/0"),
            Err(NumericError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_scalar("sqrt(4)"),
            Err(NumericError::InvalidRadicand(4))
        ));
        assert!(matches!(
            parse_scalar("sqrt(0)"),
            Err(NumericError::InvalidRadicand(0))
        ));
        for bad in [
            "",
            "abc",
            "1/-2",
            "1/",
            "/2",
            "sqrt(2",
            "1+",
            "1**sqrt(2)",
            "1.5",
        ] {
            assert!(parse_scalar(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-6/3").to_string(), "-2");
        assert_eq!(
            q("34250061-6965604*sqrt(2)").to_string(),
            "34250061-6965604*sqrt(2)"
        );
        assert_eq!(q("1+0*sqrt(3)"), Scalar::one());
        assert_eq!(q("0*sqrt(2)"), Scalar::zero());
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q("1+sqrt(2)") * q("1-sqrt(2)"), Scalar::from(-1i64));
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("1") / q("2-sqrt(2)"), q("1+1/2*sqrt(2)"));
        assert_eq!(q("sqrt(2)") - q("sqrt(2)"), Scalar::zero());
        assert_eq!(-q("3/2+sqrt(5)"), q("-3/2-sqrt(5)"));
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(
            q("sqrt(2)").try_add(&q("sqrt(3)")),
            Err(NumericError::IncompatibleRadicands(2, 3))
        );
        assert_eq!(
            q("1").try_div(&Scalar::zero()),
            Err(NumericError::DivisionByZero)
        );
        assert_eq!(
            Scalar::zero().pow(-1),
            Err(NumericError::ZeroToNegativePower(-1))
        );
        // sqrt(8) is kept as written, so it does not mix with sqrt(2)
        assert!(q("sqrt(8)").try_mul(&q("sqrt(2)")).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(q("sqrt(2)").pow(2).unwrap(), Scalar::from(2i64));
        assert_eq!(q("-1").pow(51).unwrap(), Scalar::from(-1i64));
        let mut expected = Scalar::one();
        for _ in 0..51 {
            expected = expected * Scalar::from(2i64);
        }
        assert_eq!(q("2").pow(51).unwrap(), expected);
        assert_eq!(expected.to_string(), "2251799813685248");
        assert_eq!(q("2").pow(-3).unwrap(), q("1/8"));
        assert_eq!(q("1+sqrt(2)").pow(-1).unwrap(), q("-1+sqrt(2)"));
    }

    #[test]
    fn norm_and_conjugate() {
        let Scalar::Quad(z) = q("3/2-5*sqrt(7)") else {
            panic!()
        };
        let prod = Scalar::Quad(z.clone()) * Scalar::Quad(z.conj());
        assert_eq!(prod, Scalar::Rational(z.norm()));
        assert_eq!(z.norm(), Rational::from((9, 4)) - Rational::from(175));
    }

    #[test]
    fn homogeneous_split_round_trips() {
        for text in ["-5/3", "7", "3/2+1/4*sqrt(2)", "1/6-5/4*sqrt(-3)"] {
            let v = q(text);
            let (p, l) = v.homogeneous();
            assert!(l > 0);
            assert_eq!(Scalar::from_homogeneous(p, l, v.radicand()), v);
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(q("1/3").to_decimal(5), "0.33333");
        assert_eq!(q("-2/3").to_decimal(3), "-0.667");
        assert_eq!(q("5").to_decimal(0), "5");
        assert_eq!(q("sqrt(2)").to_decimal(10), "1.4142135624");
        assert_eq!(q("1-sqrt(2)").to_decimal(6), "-0.414214");
        assert_eq!(q("1/2+sqrt(-3)").to_decimal(4), "0.5000+1.7321i");
        assert_eq!(q("-sqrt(-3)").to_decimal(2), "0.00-1.73i");
    }
}
