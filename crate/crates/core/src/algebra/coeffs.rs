use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factorial, from_biguint, Rational};

/// Coefficients p₀, p₁, ... of a one-variable power series with rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSeq {
    Finite(Vec<Rational>),
    /// pₖ = 1/k!
    Exp,
    /// pₖ = 1
    Geometric,
}

impl CoeffSeq {
    /// Coefficients of (1 + x)ⁿ.
    pub fn binomial(n: usize) -> Self {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        CoeffSeq::Finite(row.into_iter().map(Rational::from_integer).collect())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        match self {
            CoeffSeq::Finite(v) => v.get(k).cloned().unwrap_or_else(Rational::zero),
            CoeffSeq::Exp => from_biguint(&factorial(k)).recip(),
            CoeffSeq::Geometric => Rational::one(),
        }
    }

    /// Index of the last nonzero coefficient; `None` for infinite series.
    pub fn degree(&self) -> Option<usize> {
        match self {
            CoeffSeq::Finite(v) => Some(v.iter().rposition(|c| !c.is_zero()).unwrap_or(0)),
            _ => None,
        }
    }
}
