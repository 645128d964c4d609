use std::collections::BTreeMap;

use num_traits::Zero;

use super::{solve_foissy, DseError, FoissyEquation};
use crate::algebra::{inverse, Basis, LinComb, Rational};
use crate::functor::{enumerate_bigraded, enumerate_dead, enumerate_dead_marked, FunctorSpec, WHITE_PREFIX};
use crate::hopf::cuts_op;
use crate::report::CheckReport;
use crate::trees::{Color, Forest};

/// Left and right weighted counts per (root colour, k, m).
pub type DeadTable = BTreeMap<(Color, usize, usize), (Rational, Rational)>;

/// Weighted counts keyed by (root colour, k, m): on the left, P-trees with
/// k leaves and m nodes; on the right, dead Q-trees (Q = 1 + P) with k
/// white nodes and m other nodes. Both are cut at k, m ≤ `n`.
pub fn dead_equivalence_table(
    s: &FunctorSpec,
    n: usize,
) -> Result<DeadTable, DseError> {
    let q = s.with_white_ops()?;
    let mut table = DeadTable::new();
    for (t, leaves, nodes) in enumerate_bigraded(s, n, n) {
        let entry = table
            .entry((t.root_color().clone(), leaves, nodes))
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        entry.0 += inverse(&t.aut_order());
    }
    for (t, white, other) in enumerate_dead_marked(&q, WHITE_PREFIX, n, n) {
        let entry = table
            .entry((t.root_color().clone(), white, other))
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        entry.1 += inverse(&t.aut_order());
    }
    Ok(table)
}

/// P-trees and dead (1 + P)-trees with white nodes in place of leaves have
/// the same weighted counts, per root colour, leaf count and node count.
pub fn check_dead_equivalence(s: &FunctorSpec, n: usize) -> Result<CheckReport, DseError> {
    let mut report = CheckReport::new("dead-equivalence");
    for ((color, k, m), (p, q)) in dead_equivalence_table(s, n)? {
        report.expect(p == q, || {
            format!("colour {color}, {k} leaves, {m} nodes: P-trees weigh {p}, dead Q-trees weigh {q}")
        });
    }
    Ok(report)
}

/// Every cut of a dead tree has a dead crown.
pub fn check_coideal(s: &FunctorSpec, n_nodes: usize) -> CheckReport {
    let mut report = CheckReport::new("coideal");
    if !s.has_nullary() {
        report.note("no nullary operation, so there are no dead trees");
        return report;
    }
    for e in &enumerate_dead(s, n_nodes).entries {
        for cut in cuts_op(&e.tree) {
            report.expect(cut.crown.leaves() == 0, || {
                format!("{}: crown {} has leaves", e.tree, cut.crown.render())
            });
        }
    }
    report
}

/// Σ core(T)/|Aut T| over dead P-trees T with n nodes, index n.
pub fn dead_core_pushforward(s: &FunctorSpec, n: usize) -> Vec<LinComb<Forest>> {
    let mut out = vec![LinComb::zero(); n + 1];
    for e in &enumerate_dead(s, n).entries {
        out[e.tree.node_count()].add_term(e.tree.core(), inverse(&e.aut_order));
    }
    out
}

/// Dead P-trees pushed to their cores give the Foissy solution aₙ.
pub fn check_dead_foissy(s: &FunctorSpec, eq: &FoissyEquation, n: usize) -> Result<CheckReport, DseError> {
    let dead = dead_core_pushforward(s, n);
    let solved = solve_foissy(&FoissyEquation {
        f: eq.f.clone(),
        order: n,
    })?;
    let mut report = CheckReport::new("dead-foissy");
    for k in 1..=n {
        let mut keys: Vec<&Forest> = dead[k].keys().chain(solved[k].keys()).collect();
        keys.sort();
        keys.dedup();
        for f in keys {
            let (d, a) = (dead[k].get(f), solved[k].get(f));
            report.expect(d == a, || format!("a{k}, {}: dead trees give {d}, solver gives {a}", f.render()));
        }
    }
    Ok(report)
}
