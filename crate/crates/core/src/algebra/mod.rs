//! Exact scalars and finitely supported linear combinations over tree and
//! forest bases.

mod coeffs;
mod lincomb;
mod linalg;
mod poly;
mod series;

pub use coeffs::CoeffSeq;
pub use lincomb::{parse_lincomb, Basis, LinComb, TensorSeries, TripleSeries};
pub use linalg::solve_in_span;
pub use poly::{BiPoly, TruncatedPoly};
pub use series::GradedSeries;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use thiserror::Error;

use crate::trees::{Forest, OpForest};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("series mismatch: {0}")]
    Mismatch(String),
    #[error("composition needs unboundedly many powers: the argument has terms of grade <= 0 and the outer series is infinite")]
    UnboundedComposition,
    #[error("bad rational `{0}`")]
    BadRational(String),
    #[error("bad term `{0}`")]
    BadTerm(String),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn inverse(n: &BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n.clone()))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let text = text.trim();
    let bad = || AlgebraError::BadRational(text.to_string());
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// A commutative monoid of basis monomials (forests under disjoint union).
pub trait Monomial: Basis {
    fn one() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Monomial for Forest {
    fn one() -> Self {
        Forest::unit()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_one(&self) -> bool {
        self.is_unit()
    }
}

impl Monomial for OpForest {
    fn one() -> Self {
        OpForest::unit()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_one(&self) -> bool {
        self.is_unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse_reduced() {
        assert_eq!(parse_rational("2/4").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), integer(-3));
        assert_eq!(parse_rational("1/-2").unwrap().to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational(6, 3).to_string(), "2");
    }
}
