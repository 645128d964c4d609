use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_traits::Zero;

use super::{parse_rational, AlgebraError, Monomial, Rational};
use crate::trees::{CombTree, Forest, OpForest, OpTree};

/// Something that can index a coefficient and print itself in the tree
/// grammar.
pub trait Basis: Ord + Clone + fmt::Debug {
    fn render(&self) -> String;

    /// Primary rendering order; ties are broken by the rendered string.
    fn render_key(&self) -> (i64, i64);
}

impl Basis for CombTree {
    fn render(&self) -> String {
        self.as_str().to_string()
    }
    fn render_key(&self) -> (i64, i64) {
        (self.node_count() as i64, 0)
    }
}

impl Basis for Forest {
    fn render(&self) -> String {
        self.to_string()
    }
    fn render_key(&self) -> (i64, i64) {
        (self.node_count() as i64, 0)
    }
}

impl Basis for OpTree {
    fn render(&self) -> String {
        self.as_str().to_string()
    }
    fn render_key(&self) -> (i64, i64) {
        (self.leaves() as i64, 0)
    }
}

impl Basis for OpForest {
    fn render(&self) -> String {
        self.to_string()
    }
    fn render_key(&self) -> (i64, i64) {
        (self.leaves() as i64, 0)
    }
}

impl<A: Basis, B: Basis> Basis for (A, B) {
    fn render(&self) -> String {
        format!("{} (x) {}", self.0.render(), self.1.render())
    }
    fn render_key(&self) -> (i64, i64) {
        let right = self.1.render_key().0;
        (self.0.render_key().0 + right, right)
    }
}

impl<A: Basis, B: Basis, C: Basis> Basis for (A, B, C) {
    fn render(&self) -> String {
        format!(
            "{} (x) {} (x) {}",
            self.0.render(),
            self.1.render(),
            self.2.render()
        )
    }
    fn render_key(&self) -> (i64, i64) {
        let right = self.2.render_key().0;
        (self.0.render_key().0 + self.1.render_key().0 + right, right)
    }
}

/// A finitely supported rational linear combination. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

pub type TensorSeries<B> = LinComb<(B, B)>;
pub type TripleSeries<B> = LinComb<(B, B, B)>;

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coef: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coef);
        out
    }

    pub fn add_term(&mut self, key: K, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::from_integer(1.into()));
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn get(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
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

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<A: Ord + Clone, B: Ord + Clone> LinComb<(A, B)> {
    pub fn map_left<L: Ord + Clone>(&self, mut f: impl FnMut(&A) -> LinComb<L>) -> LinComb<(L, B)> {
        let mut out = LinComb::zero();
        for ((a, b), c) in &self.terms {
            for (l, d) in f(a).iter() {
                out.add_term((l.clone(), b.clone()), c * d);
            }
        }
        out
    }

    pub fn map_right<R: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<R>) -> LinComb<(A, R)> {
        let mut out = LinComb::zero();
        for ((a, b), c) in &self.terms {
            for (r, d) in f(b).iter() {
                out.add_term((a.clone(), r.clone()), c * d);
            }
        }
        out
    }
}

impl<B: Monomial> LinComb<B> {
    pub fn one() -> Self {
        LinComb::term(B::one(), Rational::from_integer(1.into()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LinComb::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.times(b), c * d);
            }
        }
        out
    }
}

impl<K: Basis> LinComb<K> {
    /// Terms in rendering order: by [`Basis::render_key`], then by string.
    pub fn sorted_terms(&self) -> Vec<(String, &Rational)> {
        let mut rows: Vec<((i64, i64), String, &Rational)> = self
            .terms
            .iter()
            .map(|(k, c)| (k.render_key(), k.render(), c))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.as_bytes().cmp(b.1.as_bytes())));
        rows.into_iter().map(|(_, s, c)| (s, c)).collect()
    }
}

impl<K: Basis> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.sorted_terms();
        if rows.is_empty() {
            return f.write_str("0");
        }
        for (i, (basis, coef)) in rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{coef}*{basis}")?;
        }
        Ok(())
    }
}

impl<K: Basis> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb({self})")
    }
}

/// Parses the text form `c1*basis1 + c2*basis2 + ...` (or `0`), using
/// `basis` for each basis string.
pub fn parse_lincomb<K: Ord + Clone, E>(
    text: &str,
    mut basis: impl FnMut(&str) -> Result<K, E>,
) -> Result<LinComb<K>, AlgebraError>
where
    E: fmt::Display,
{
    let text = text.trim();
    let mut out = LinComb::zero();
    if text == "0" {
        return Ok(out);
    }
    for term in text.split(" + ") {
        let term = term.trim();
        let split = term
            .char_indices()
            .find(|(_, ch)| !(ch.is_ascii_digit() || *ch == '/' || *ch == '-'))
            .map(|(i, _)| i)
            .ok_or_else(|| AlgebraError::BadTerm(term.to_string()))?;
        let (coef, rest) = term.split_at(split);
        let rest = rest
            .strip_prefix('*')
            .ok_or_else(|| AlgebraError::BadTerm(term.to_string()))?;
        let coef = parse_rational(coef)?;
        let key = basis(rest.trim()).map_err(|e| AlgebraError::BadTerm(format!("{term}: {e}")))?;
        out.add_term(key, coef);
    }
    Ok(out)
}
