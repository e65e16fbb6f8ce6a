//! Exact scalar, polynomial, rational-function and matrix arithmetic.

mod division;
pub mod expansion;
pub mod gcd;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod univariate;

use num_bigint::BigInt;
use thiserror::Error;

pub use matrix::{QMatrix, RFMatrix};
pub use poly::{IntPoly, Monomial, MultiPoly, Poly};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("substitution hits a pole")]
    PoleAtSubstitution,
    #[error("not expandable: {0}")]
    NotExpandable(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        assert_eq!(format_rational(&rat(22, 7)), "22/7");
        assert_eq!(parse_rational("22/7"), Some(rat(22, 7)));
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(format_rational(&int(-3)), "-3");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
