use num_traits::{One, Zero};

use super::{BKEquation, DseError, FoissyEquation};
use crate::algebra::{solve_in_span, GradedSeries, LinComb, Rational, TensorSeries};
use crate::hopf::coproduct_forest;
use crate::report::CheckReport;
use crate::trees::{Forest, Grading};

fn b_plus(x: &LinComb<Forest>) -> LinComb<Forest> {
    x.map_linear(|f| LinComb::term(Forest::single(f.graft()), Rational::one()))
}

/// `pow[m][d]` = [αᵈ] Xᵐ for X = Σ cⱼαʲ, extended one degree at a time.
struct Powers {
    pow: Vec<Vec<LinComb<Forest>>>,
}

impl Powers {
    fn new(max_power: usize) -> Self {
        let mut pow = vec![Vec::new(); max_power + 1];
        pow[0].push(LinComb::one());
        for row in pow.iter_mut().skip(1) {
            row.push(LinComb::zero());
        }
        Powers { pow }
    }

    /// Fills degree `d` of every power once c₀..c_d are known.
    fn extend(&mut self, c: &[LinComb<Forest>], d: usize) {
        if d > 0 {
            self.pow[0].push(LinComb::zero());
        }
        for m in 1..self.pow.len() {
            let mut acc = LinComb::zero();
            for (j, cj) in c.iter().enumerate().take(d + 1) {
                if !cj.is_zero() {
                    acc.add_assign(&cj.mul(&self.pow[m - 1][d - j]));
                }
            }
            if d == 0 {
                self.pow[m][0] = acc;
            } else {
                self.pow[m].push(acc);
            }
        }
    }

    fn get(&self, m: usize, d: usize) -> &LinComb<Forest> {
        &self.pow[m][d]
    }
}

/// c₀..c_N of X = 1 + Σₙ wₙ αⁿ B₊(Xⁿ⁺¹), index k holding cₖ.
pub fn solve_bk(eq: &BKEquation) -> Vec<LinComb<Forest>> {
    let n = eq.order;
    let mut c = vec![LinComb::one()];
    let mut powers = Powers::new(n + 1);
    powers.extend(&c, 0);
    for k in 1..=n {
        let mut ck = LinComb::zero();
        for m in 1..=k {
            let w = eq.weights.weight(m);
            if !w.is_zero() {
                ck.add_scaled(&b_plus(powers.get(m + 1, k - m)), &w);
            }
        }
        c.push(ck);
        powers.extend(&c, k);
    }
    c
}

/// a₁..a_N of Y = α B₊(f(Y)), index n holding aₙ (index 0 is zero).
pub fn solve_foissy(eq: &FoissyEquation) -> Result<Vec<LinComb<Forest>>, DseError> {
    let f = eq.f.coeffs();
    let p0 = f.coeff(0);
    if !p0.is_one() {
        return Err(DseError::ConstantTerm(p0));
    }
    let n = eq.order;
    let mut a = vec![LinComb::zero()];
    let mut powers = Powers::new(n);
    powers.extend(&a, 0);
    for k in 1..=n {
        // [α^{k-1}] f(Y); Yᵐ starts at αᵐ.
        let mut inner = LinComb::zero();
        for m in 0..k {
            let p = f.coeff(m);
            if !p.is_zero() {
                inner.add_scaled(powers.get(m, k - 1), &p);
            }
        }
        a.push(b_plus(&inner));
        powers.extend(&a, k);
    }
    Ok(a)
}

/// Packs solver output into one series, grade = index.
pub fn as_series(components: &[LinComb<Forest>], mode: Grading) -> GradedSeries<Forest> {
    let top = components.len().saturating_sub(1) as i64;
    let mut s = GradedSeries::with_bounds(mode, 0, top);
    for (k, ck) in components.iter().enumerate() {
        for (f, coef) in ck.iter() {
            s.add_term(k as i64, f.clone(), coef.clone());
        }
    }
    s
}

fn delta(x: &LinComb<Forest>) -> TensorSeries<Forest> {
    let mut out = LinComb::zero();
    for (f, c) in x.iter() {
        out.add_scaled(&coproduct_forest(f), c);
    }
    out
}

fn tensor(left: &LinComb<Forest>, right: &LinComb<Forest>) -> TensorSeries<Forest> {
    let mut out = LinComb::zero();
    for (a, c) in left.iter() {
        for (b, d) in right.iter() {
            out.add_term((a.clone(), b.clone()), c * d);
        }
    }
    out
}

/// Partitions of `n` into parts ≥ 1, parts non-increasing.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Checks that each Δ(cₖ) is an exact rational combination of the tensors
/// (c_{i₁}⋯c_{iᵣ}) ⊗ cⱼ with i₁+⋯+iᵣ = k − j.
pub fn check_hopf_subalgebra(c: &[LinComb<Forest>]) -> CheckReport {
    let mut report = CheckReport::new("hopf-subalgebra");
    for k in 0..c.len() {
        let mut span = Vec::new();
        for (j, cj) in c.iter().enumerate().take(k + 1) {
            for parts in partitions(k - j) {
                let product = parts.iter().fold(LinComb::one(), |acc, &i| acc.mul(&c[i]));
                span.push(tensor(&product, cj));
            }
        }
        let target = delta(&c[k]);
        let solved = solve_in_span(&span, &target);
        report.expect(solved.is_some(), || {
            format!("Delta(c{k}) is not in the span of {} product tensors", span.len())
        });
    }
    report
}

/// Σⱼ ([α^{k−j}] X^{j+1}) ⊗ cⱼ, the coproduct the Faà di Bruno structure
/// predicts for cₖ.
pub fn fdb_coproduct(c: &[LinComb<Forest>], k: usize) -> TensorSeries<Forest> {
    let mut powers = Powers::new(k + 1);
    for d in 0..=k {
        powers.extend(c, d);
    }
    let mut out = LinComb::zero();
    for (j, cj) in c.iter().enumerate().take(k + 1) {
        out.add_assign(&tensor(powers.get(j + 1, k - j), cj));
    }
    out
}
