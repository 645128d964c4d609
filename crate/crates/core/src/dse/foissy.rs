use std::collections::BTreeMap;

use super::{solve_foissy, FoissyEquation, FoissyF};
use crate::algebra::{integer, inverse, Basis, Rational};
use crate::report::CheckReport;
use crate::trees::{CombTree, Forest};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoissyKind {
    Exp,
    Geometric,
}

/// Plane trees with `n` nodes, as ordered child lists.
#[derive(Clone)]
struct Plane(Vec<Plane>);

fn plane_trees(n: usize) -> Vec<Plane> {
    if n == 0 {
        return Vec::new();
    }
    plane_forests(n - 1).into_iter().map(Plane).collect()
}

fn plane_forests(n: usize) -> Vec<Vec<Plane>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for t in plane_trees(first) {
            for rest in plane_forests(n - first) {
                let mut f = vec![t.clone()];
                f.extend(rest);
                out.push(f);
            }
        }
    }
    out
}

fn underlying(p: &Plane) -> CombTree {
    CombTree::from_children(p.0.iter().map(underlying).collect())
}

/// Number of plane trees with underlying tree t, for every t with `n`
/// nodes, by listing all plane trees.
pub fn planar_embeddings(n: usize) -> BTreeMap<CombTree, usize> {
    let mut out = BTreeMap::new();
    for p in plane_trees(n) {
        *out.entry(underlying(&p)).or_insert(0) += 1;
    }
    out
}

/// Foissy's exp solution weighs each tree by 1/|Aut t|; the geometric one
/// counts its plane embeddings.
pub fn check_foissy_interpretation(kind: FoissyKind, n: usize) -> CheckReport {
    let f = match kind {
        FoissyKind::Exp => FoissyF::Exp,
        FoissyKind::Geometric => FoissyF::Geometric,
    };
    let a = solve_foissy(&FoissyEquation { f, order: n }).expect("p0 = 1");
    let mut report = CheckReport::new("foissy-interp");
    for (k, ak) in a.iter().enumerate().skip(1) {
        let expected: BTreeMap<Forest, Rational> = match kind {
            FoissyKind::Exp => CombTree::all_with_nodes(k)
                .into_iter()
                .map(|t| {
                    let w = inverse(&t.aut_order());
                    (Forest::single(t), w)
                })
                .collect(),
            FoissyKind::Geometric => planar_embeddings(k)
                .into_iter()
                .map(|(t, m)| (Forest::single(t), integer(m as i64)))
                .collect(),
        };
        for (f, want) in &expected {
            let got = ak.get(f);
            report.expect(&got == want, || format!("a{k}, {}: solver gives {got}, expected {want}", f.render()));
        }
        for (f, got) in ak.iter() {
            report.expect(expected.contains_key(f), || {
                format!("a{k} has unexpected term {got}*{}", f.render())
            });
        }
    }
    report
}
