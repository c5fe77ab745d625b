use thiserror::Error;

use crate::numeric::{NumericError, Scalar};
use crate::sums::Method;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("moduli must be positive, got ({a}, {b})")]
    ZeroModulus { a: u64, b: u64 },
    #[error("moduli ({a}, {b}) are not coprime (gcd {gcd})")]
    NotCoprime { a: u64, b: u64, gcd: u64 },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("Apostol-Bernoulli numbers B_n(1) are not given by the explicit formula; lambda must differ from 1")]
    ApostolAtOne,
    #[error("{method} requires lambda != 1")]
    LambdaIsOne { method: Method },
    #[error("{method} requires lambda = 1")]
    LambdaNotOne { method: Method },
    #[error("{method} requires lambda^{exponent} != 1, but lambda = {lambda}")]
    DegeneratePower {
        method: Method,
        lambda: Scalar,
        exponent: u64,
    },
    #[error(
        "theorem_m1 requires exactly one of lambda^{a}, lambda^{b} to equal 1 (lambda = {lambda})"
    )]
    NoDegeneratePower { a: u64, b: u64, lambda: Scalar },
    #[error("the classical lambda = 1 formulas cover m <= 2 only, got m = {m}")]
    ClassicalUnsupported { m: u32 },
    #[error("oracle needs ab = {product} <= cap {cap}")]
    OracleCapExceeded { product: u64, cap: u64 },
    #[error("methods disagree: {}", format_values(.values))]
    Disagreement { values: Vec<(Method, Scalar)> },
}

fn format_values(values: &[(Method, Scalar)]) -> String {
    values
        .iter()
        .map(|(m, v)| format!("{m} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}
