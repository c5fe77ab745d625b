//! Exact weighted Sylvester sums
//!
//! For coprime `a, b` and a nonzero `lambda` this crate computes
//!
//! ```text
//! S_m(lambda; a, b) = sum over n in NR(a, b) of lambda^(n-1) * n^m
//! ```
//!
//! where `NR(a, b)` is the set of positive integers that are not of the form
//! `s a + t b` with `s, t >= 0`. Values are exact: `lambda` may be any rational
//! or an element `x + y*sqrt(d)` of a quadratic field.
//!
//! ```
//! use sylvester::{parse_scalar, sylvester_sum, CoprimePair, SumRequest};
//!
//! let pair = CoprimePair::new(3, 17).unwrap();
//! let req = SumRequest::new(pair, 1, parse_scalar("2").unwrap()).unwrap();
//! assert_eq!(sylvester_sum(&req).unwrap().value.to_string(), "37515351605");
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod numeric;
pub mod semigroup;
pub mod special;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{parse_scalar, NumericError, QuadRational, Rational, Scalar};
pub use semigroup::{
    frobenius_number, gap_polynomial, gap_set, gh_polynomials, poly_derivative_eval,
    representation_count, CoprimePair, GapPolynomial, GapSet, IntPolynomial,
};
pub use special::{
    apostol_bernoulli, apostol_bernoulli_by_recurrence, bernoulli, binomial, euler_at_zero,
    stirling2, ApostolBernoulliTable, BernoulliTable, StirlingTable,
};
pub use sums::{
    alternating_sum, sum_classical_lambda1, sum_derivative, sum_oracle, sum_s2_closed,
    sum_theorem1, sum_theorem_m, sum_theorem_m1, sylvester_sum, AuxiliaryX, Method, SumRequest,
    SumResult, DEFAULT_ORACLE_CAP,
};
