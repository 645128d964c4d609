use std::sync::Arc;

use num_traits::One;

use super::{
    b_plus_ck, b_plus_weighted, coproduct_ck, coproduct_forest, coproduct_op, coproduct_op_forest, counit_ck,
    counit_op, counit_sides, delta_left, delta_right,
};
use crate::algebra::{LinComb, Rational};
use crate::report::CheckReport;
use crate::trees::{CombTree, Forest, OpDecl, OpForest, OpTree};

/// Coassociativity and both counit laws on every CK tree with at most
/// `max_nodes` nodes.
pub fn check_coassoc_ck(max_nodes: usize) -> CheckReport {
    let mut report = CheckReport::new("coassoc");
    for t in (1..=max_nodes).flat_map(CombTree::all_with_nodes) {
        let f = Forest::single(t.clone());
        report.expect(delta_left(&f, coproduct_forest) == delta_right(&f, coproduct_forest), || {
            format!("coassociativity fails on {t}")
        });
        let (l, r) = counit_sides(&coproduct_ck(&t), counit_ck);
        let id = LinComb::term(f, Rational::one());
        report.expect(l == id && r == id, || format!("counit fails on {t}"));
    }
    report
}

/// Coassociativity and both counit laws on the given operadic trees.
pub fn check_coassoc_op(trees: &[OpTree]) -> CheckReport {
    let mut report = CheckReport::new("coassoc");
    for t in trees {
        let f = OpForest::single(t.clone());
        report.expect(delta_left(&f, coproduct_op_forest) == delta_right(&f, coproduct_op_forest), || {
            format!("coassociativity fails on {t}")
        });
        let (l, r) = counit_sides(&coproduct_op(t), counit_op);
        let id = LinComb::term(f, Rational::one());
        report.expect(l == id && r == id, || format!("counit fails on {t}"));
    }
    report
}

/// Δ B₊ = B₊ ⊗ 1 + (Id ⊗ B₊) Δ on CK forests with at most `max_nodes` nodes.
pub fn check_cocycle_ck(max_nodes: usize) -> CheckReport {
    let mut report = CheckReport::new("cocycle");
    for n in 0..=max_nodes {
        for x in Forest::all_with_nodes(n) {
            let lhs = coproduct_ck(&b_plus_ck(&x));
            let mut rhs = LinComb::term((Forest::single(b_plus_ck(&x)), Forest::unit()), Rational::one());
            rhs.add_assign(
                &coproduct_forest(&x).map_right(|r| LinComb::term(Forest::single(b_plus_ck(r)), Rational::one())),
            );
            report.expect(lhs == rhs, || format!("B+({x}): Delta B+ = {lhs}, cocycle side = {rhs}"));
        }
    }
    report
}

/// The operadic cocycle identity with its single-term defect,
///
///   Δ B_op(f) = (Id ⊗ B_op) Δ(f) + B_op(f) ⊗ e,
///
/// where e is the trivial tree of the output colour. `pool` supplies the
/// trees used to fill the inputs; fillings are kept to at most `max_nodes`
/// nodes and `max_leaves` leaves in total.
pub fn check_cocycle_op(ops: &[Arc<OpDecl>], pool: &[OpTree], max_nodes: usize, max_leaves: usize) -> CheckReport {
    let mut report = CheckReport::new("cocycle");
    for op in ops {
        let mut fillings: Vec<(Vec<OpTree>, usize, usize)> = vec![(Vec::new(), 0, 0)];
        for input in &op.inputs {
            let mut next = Vec::new();
            for (fill, nodes, leaves) in &fillings {
                for t in pool.iter().filter(|t| {
                    t.root_color() == input && nodes + t.node_count() <= max_nodes && leaves + t.leaves() <= max_leaves
                }) {
                    let mut f = fill.clone();
                    f.push(t.clone());
                    next.push((f, nodes + t.node_count(), leaves + t.leaves()));
                }
            }
            fillings = next;
        }
        let e = OpForest::single(OpTree::trivial(op.output.clone()));
        for (fill, _, _) in fillings {
            let f = OpForest::from_trees(fill);
            let bf = match b_plus_weighted(op, &f) {
                Ok(bf) => bf,
                Err(err) => {
                    report.expect(false, || format!("{} on {f}: {err}", op.name));
                    continue;
                }
            };
            let lhs = bf.map_linear(coproduct_op);
            let mut rhs = coproduct_op_forest(&f).map_right(|r| {
                b_plus_weighted(op, r)
                    .map(|b| b.map_linear(|t| LinComb::term(OpForest::single(t.clone()), Rational::one())))
                    .unwrap_or_else(|_| LinComb::zero())
            });
            rhs.add_assign(&bf.map_linear(|t| LinComb::term((OpForest::single(t.clone()), e.clone()), Rational::one())));
            report.expect(lhs == rhs, || format!("{} on {f}: Delta B = {lhs}, cocycle side = {rhs}", op.name));
        }
    }
    report
}
