use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, CoeffSeq, LinComb, Monomial, Rational};
use crate::trees::Grading;

/// A truncated series Σ c·αᵍ·m over monomials m, where the grade g of each
/// term is stored explicitly. Only grades in `lower..=upper` are kept.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries<B: Ord> {
    mode: Grading,
    lower: i64,
    upper: i64,
    terms: BTreeMap<(i64, B), Rational>,
}

impl<B: Monomial> GradedSeries<B> {
    /// Empty series truncated at `upper`, with the default lower bound −upper.
    pub fn zero(mode: Grading, upper: i64) -> Self {
        Self::with_bounds(mode, -upper.abs(), upper)
    }

    pub fn with_bounds(mode: Grading, lower: i64, upper: i64) -> Self {
        GradedSeries {
            mode,
            lower: lower.min(0),
            upper,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: Grading, upper: i64) -> Self {
        let mut s = Self::zero(mode, upper);
        s.add_term(0, B::one(), Rational::one());
        s
    }

    pub fn empty_like(&self) -> Self {
        Self::with_bounds(self.mode, self.lower, self.upper)
    }

    pub fn mode(&self) -> Grading {
        self.mode
    }

    pub fn bounds(&self) -> (i64, i64) {
        (self.lower, self.upper)
    }

    /// Adds c·αᵍ·m. Terms outside the bounds are dropped.
    pub fn add_term(&mut self, grade: i64, basis: B, coef: Rational) {
        if coef.is_zero() || grade < self.lower || grade > self.upper {
            return;
        }
        let key = (grade, basis);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, grade: i64, basis: &B) -> Rational {
        self.terms
            .get(&(grade, basis.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &B, &Rational)> {
        self.terms.iter().map(|((g, b), c)| (*g, b, c))
    }

    pub fn min_grade(&self) -> Option<i64> {
        self.terms.keys().map(|(g, _)| *g).min()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.mode != other.mode {
            return Err(AlgebraError::Mismatch(format!(
                "grading {:?} vs {:?}",
                self.mode, other.mode
            )));
        }
        if (self.lower, self.upper) != (other.lower, other.upper) {
            return Err(AlgebraError::Mismatch(format!(
                "bounds {}..={} vs {}..={}",
                self.lower, self.upper, other.lower, other.upper
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, b, c) in other.iter() {
            out.add_term(g, b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = self.empty_like();
        for (g, b, c) in self.iter() {
            out.add_term(g, b.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.empty_like();
        for (g, b, c) in self.iter() {
            for (h, d, e) in other.iter() {
                out.add_term(g + h, b.times(d), c * e);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.mode, 0);
        out.lower = self.lower;
        out.upper = self.upper;
        for _ in 0..n {
            out = out.mul(self).expect("same bounds");
        }
        out
    }

    /// f(a) = Σ pₖ·aᵏ.
    pub fn compose_scalar(&self, f: &CoeffSeq) -> Result<Self, AlgebraError> {
        let max_power = match (f.degree(), self.min_grade()) {
            (Some(d), _) => d,
            (None, None) => 0,
            (None, Some(m)) if m >= 1 => (self.upper.max(0) / m) as usize,
            (None, Some(_)) => return Err(AlgebraError::UnboundedComposition),
        };
        let mut out = self.empty_like();
        let mut power = Self::one(self.mode, 0);
        power.lower = self.lower;
        power.upper = self.upper;
        for k in 0..=max_power {
            if k > 0 {
                power = power.mul(self)?;
            }
            out = out.add(&power.scale(&f.coeff(k)))?;
        }
        Ok(out)
    }

    /// The grade-`k` component, as a plain linear combination.
    pub fn grade_slice(&self, k: i64) -> LinComb<B> {
        self.terms
            .iter()
            .filter(|((g, _), _)| *g == k)
            .map(|((_, b), c)| (b.clone(), c.clone()))
            .collect()
    }

    /// Re-truncates at a smaller upper bound.
    pub fn truncate(&self, upper: i64) -> Self {
        let mut out = Self::with_bounds(self.mode, self.lower, upper.min(self.upper));
        for (g, b, c) in self.iter() {
            out.add_term(g, b.clone(), c.clone());
        }
        out
    }
}

impl<B: Monomial> fmt::Display for GradedSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut rows: Vec<(i64, String, &Rational)> =
            self.iter().map(|(g, b, c)| (g, b.render(), c)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.as_bytes().cmp(b.1.as_bytes())));
        for (i, (_, b, c)) in rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{b}")?;
        }
        Ok(())
    }
}

impl<B: Monomial> fmt::Debug for GradedSeries<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedSeries[{}..={}]({self})", self.lower, self.upper)
    }
}
