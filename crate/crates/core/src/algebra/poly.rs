use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// A one-variable polynomial modulo x^(N+1).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    coeffs: Vec<Rational>,
}

impl TruncatedPoly {
    pub fn zero(n: usize) -> Self {
        TruncatedPoly {
            coeffs: vec![Rational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[0] = Rational::one();
        p
    }

    /// The monomial x, or zero when N = 0.
    pub fn x(n: usize) -> Self {
        let mut p = Self::zero(n);
        if n >= 1 {
            p.coeffs[1] = Rational::one();
        }
        p
    }

    pub fn from_coeffs(n: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(n);
        for (slot, c) in p.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        p
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add_at(&mut self, k: usize, c: &Rational) {
        if let Some(slot) = self.coeffs.get_mut(k) {
            *slot += c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.bound().min(other.bound());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.bound());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Debug for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.coeffs.len())
    }
}


/// A two-variable polynomial modulo x^(N+1) and y^(M+1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero(n: usize, m: usize) -> Self {
        BiPoly {
            coeffs: vec![vec![Rational::zero(); m + 1]; n + 1],
        }
    }

    pub fn monomial(n: usize, m: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(n, m);
        p.add_at(i, j, &Rational::one());
        p
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::monomial(n, m, 0, 0)
    }

    fn bounds(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Rational) {
        if let Some(slot) = self.coeffs.get_mut(i).and_then(|row| row.get_mut(j)) {
            *slot += c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.add_at(i, j, c);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (n, m) = self.bounds();
        let mut out = Self::zero(n, m);
        for (i1, row1) in self.coeffs.iter().enumerate() {
            for (j1, a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, row2) in other.coeffs.iter().enumerate().take(n + 1 - i1) {
                    for (j2, b) in row2.iter().enumerate().take(m + 1 - j1) {
                        if !b.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let (n, m) = self.bounds();
        (0..k).fold(Self::one(n, m), |acc, _| acc.mul(self))
    }
}
