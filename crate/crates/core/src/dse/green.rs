use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{solve_bk, BKEquation, DseError};
use crate::algebra::{inverse, Basis, GradedSeries, LinComb, Monomial, Rational, TensorSeries};
use crate::functor::{check_leaf_finite, dead_colors, enumerate_ptrees, enumerate_sized, FunctorSpec};
use crate::hopf::coproduct_op;
use crate::report::CheckReport;
use crate::trees::{Color, Forest, Grading, OpForest, OpTree};

/// G = Σ T/|Aut T| over all P-trees, one series per root colour, cut at
/// `order` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenFunction {
    pub order: usize,
    /// `components[c][n]` is gₙ for root colour c.
    pub components: BTreeMap<Color, Vec<LinComb<OpTree>>>,
}

impl GreenFunction {
    pub fn component(&self, color: &Color, n: usize) -> LinComb<OpTree> {
        self.components
            .get(color)
            .and_then(|g| g.get(n))
            .cloned()
            .unwrap_or_else(LinComb::zero)
    }

    pub fn total(&self, color: &Color) -> LinComb<OpTree> {
        let mut out = LinComb::zero();
        for g in self.components.get(color).into_iter().flatten() {
            out.add_assign(g);
        }
        out
    }

    /// G for one colour as a leaf-graded series over one-tree forests.
    pub fn series(&self, color: &Color) -> GradedSeries<OpForest> {
        let mut s = GradedSeries::with_bounds(Grading::Leaves, 0, self.order as i64);
        for (n, g) in self.components.get(color).into_iter().flatten().enumerate() {
            for (t, c) in g.iter() {
                s.add_term(n as i64, OpForest::single(t.clone()), c.clone());
            }
        }
        s
    }
}

impl fmt::Display for GreenFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let many = self.components.len() > 1;
        for (color, gs) in &self.components {
            if many {
                writeln!(f, "colour {color}:")?;
            }
            for (n, g) in gs.iter().enumerate() {
                if !g.is_zero() {
                    writeln!(f, "{n}: {g}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn green_function(s: &FunctorSpec, n: usize) -> Result<GreenFunction, DseError> {
    let trees = enumerate_ptrees(s, Grading::Leaves, n as i64, None)?;
    let mut components: BTreeMap<Color, Vec<LinComb<OpTree>>> = s
        .color_list()
        .into_iter()
        .map(|c| (c, vec![LinComb::zero(); n + 1]))
        .collect();
    for e in &trees.entries {
        let slot = &mut components.get_mut(e.tree.root_color()).expect("declared colour")[e.tree.leaves()];
        slot.add_term(e.tree.clone(), inverse(&e.aut_order));
    }
    Ok(GreenFunction { order: n, components })
}

/// Truncation window shared by both sides of the Faà di Bruno identity:
/// the left factor has at most `leaves` leaves and the whole term at most
/// `nodes` nodes.
#[derive(Clone, Copy)]
struct Window {
    leaves: usize,
    nodes: Option<usize>,
}

impl Window {
    fn keeps(&self, left: &OpForest, right_nodes: usize) -> bool {
        left.leaves() <= self.leaves && self.nodes.is_none_or(|m| left.node_count() + right_nodes <= m)
    }
}

fn truncated_mul(a: &LinComb<OpForest>, b: &LinComb<OpForest>, w: Window) -> LinComb<OpForest> {
    let sized = |x: &LinComb<OpForest>| -> Vec<(usize, usize, OpForest, Rational)> {
        x.iter()
            .map(|(f, c)| (f.leaves(), f.node_count(), f.clone(), c.clone()))
            .collect()
    };
    let (a, b) = (sized(a), sized(b));
    let mut out = LinComb::zero();
    for (l1, n1, x, c) in &a {
        for (l2, n2, y, d) in &b {
            if l1 + l2 > w.leaves || w.nodes.is_some_and(|m| n1 + n2 > m) {
                continue;
            }
            out.add_term(x.times(y), c * d);
        }
    }
    out
}

/// Checks Δ(G_v) = Σ_S (1/|Aut S|) (Π_c G_c^{ℓ_c(S)}) ⊗ S for every root
/// colour v, where S runs over P-trees with root colour v and ℓ_c(S) counts
/// its leaves of colour c. With one colour this is Δ(G) = Σₙ Gⁿ ⊗ gₙ.
///
/// Terms are compared while the left factor has at most `n` leaves. If a
/// colour admits leafless trees or leaf grades are infinite, terms are also
/// cut at `n` nodes in total.
pub fn check_fdb(s: &FunctorSpec, n: usize) -> Result<CheckReport, DseError> {
    let mut report = CheckReport::new("fdb");
    let explicit: Vec<_> = s.instantiate_with(|_| 0).into_iter().filter(|o| o.family.is_none()).collect();
    let leaf_finite = check_leaf_finite(s, n).is_ok() && dead_colors(&explicit, s).is_empty();
    // Trees that can appear as a whole tree, as a factor, or as a trunk.
    let (w, trees): (Window, Vec<OpTree>) = if leaf_finite {
        let trees = enumerate_ptrees(s, Grading::Leaves, n as i64, None)?;
        (
            Window { leaves: n, nodes: None },
            trees.entries.into_iter().map(|e| e.tree).collect(),
        )
    } else {
        report.note(format!(
            "some colour has leafless trees or infinitely many trees per leaf count; terms cut at {n} leaves on the left and {n} nodes in total"
        ));
        (
            Window { leaves: n, nodes: Some(n) },
            // A trunk has one leaf per crown root, and each crown tree has a leaf or a node.
            enumerate_sized(s, 2 * n, n).into_iter().map(|(t, _, _)| t).collect(),
        )
    };

    let mut lhs: TensorSeries<OpForest> = LinComb::zero();
    for t in trees.iter().filter(|t| w.keeps(&OpForest::single((*t).clone()), 0)) {
        let weight = inverse(&t.aut_order());
        for ((crown, trunk), c) in coproduct_op(t).iter() {
            if w.keeps(crown, trunk.node_count()) {
                lhs.add_term((crown.clone(), trunk.clone()), c * &weight);
            }
        }
    }

    let colors = s.color_list();
    let mut g: BTreeMap<Color, LinComb<OpForest>> = colors.iter().map(|c| (c.clone(), LinComb::zero())).collect();
    for t in &trees {
        let f = OpForest::single(t.clone());
        if w.keeps(&f, 0) {
            g.get_mut(t.root_color())
                .expect("declared colour")
                .add_term(f, inverse(&t.aut_order()));
        }
    }
    let mut powers: BTreeMap<Color, Vec<LinComb<OpForest>>> =
        colors.iter().map(|c| (c.clone(), vec![LinComb::one()])).collect();
    // Π_c G_c^{ℓ_c} per leaf-colour signature, bucketed by node count.
    type Buckets = Vec<Vec<(OpForest, Rational)>>;
    let mut products: BTreeMap<BTreeMap<Color, usize>, Buckets> = BTreeMap::new();
    let mut rhs: TensorSeries<OpForest> = LinComb::zero();
    for trunk in &trees {
        let budget = match w.nodes {
            Some(m) if trunk.node_count() > m => continue,
            Some(m) => m - trunk.node_count(),
            None => usize::MAX,
        };
        let signature = trunk.leaf_colors();
        let buckets = products.entry(signature.clone()).or_insert_with(|| {
            let mut left = LinComb::one();
            for (c, k) in &signature {
                let pw = powers.get_mut(c).expect("declared colour");
                while pw.len() <= *k {
                    let next = truncated_mul(pw.last().expect("starts at one"), &g[c], w);
                    pw.push(next);
                }
                left = truncated_mul(&left, &pw[*k], w);
            }
            let mut buckets: Vec<Vec<(OpForest, Rational)>> = Vec::new();
            for (p, c) in left.iter() {
                let m = p.node_count();
                if buckets.len() <= m {
                    buckets.resize(m + 1, Vec::new());
                }
                buckets[m].push((p.clone(), c.clone()));
            }
            buckets
        });
        let weight = inverse(&trunk.aut_order());
        let right = OpForest::single(trunk.clone());
        for bucket in buckets.iter().take(budget.saturating_add(1)) {
            for (p, c) in bucket {
                rhs.add_term((p.clone(), right.clone()), c * &weight);
            }
        }
    }

    let mut keys: Vec<&(OpForest, OpForest)> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let (l, r) = (lhs.get(key), rhs.get(key));
        report.expect(l == r, || {
            format!("coefficient of {} (x) {}: Delta(G) gives {l}, FdB side gives {r}", key.0.render(), key.1.render())
        });
    }
    Ok(report)
}

/// For k = 0..N−1, Σ (coefficient of T in G)·core(T) over all P-trees T
/// with k+1 leaves, whatever their root colour.
pub fn core_pushforward(g: &GreenFunction) -> Vec<LinComb<Forest>> {
    let mut out = vec![LinComb::zero(); g.order];
    for gs in g.components.values() {
        for (leaves, gn) in gs.iter().enumerate().skip(1) {
            for (t, c) in gn.iter() {
                out[leaves - 1].add_term(t.core(), c.clone());
            }
        }
    }
    out
}

/// core_pushforward(G)ₖ = cₖ for k ≤ N, G cut at N+1 leaves.
pub fn check_core_theorem(s: &FunctorSpec, eq: &BKEquation, n: usize) -> Result<CheckReport, DseError> {
    let pushed = core_pushforward(&green_function(s, n + 1)?);
    let solved = solve_bk(&BKEquation {
        weights: eq.weights.clone(),
        order: n,
    });
    let mut report = CheckReport::new("core-theorem");
    for k in 0..=n {
        let diff = pushed[k].sub(&solved[k]);
        let mut keys: Vec<&Forest> = pushed[k].keys().chain(solved[k].keys()).collect();
        keys.sort();
        keys.dedup();
        for f in keys {
            report.expect(diff.get(f).is_zero(), || {
                format!(
                    "c{k}, {}: P-trees give {}, solver gives {}",
                    f.render(),
                    pushed[k].get(f),
                    solved[k].get(f)
                )
            });
        }
    }
    Ok(report)
}
