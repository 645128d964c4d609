use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::{tensor_mul, HopfError};
use crate::algebra::{integer, inverse, LinComb, Rational, TensorSeries};
use crate::trees::{OpDecl, OpForest, OpTree, TreeError};

/// One cut of an operadic tree: a root-containing subtree `trunk` and the
/// forest `crown` of ideal subtrees sitting on the trunk's leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutTermOp {
    pub crown: OpForest,
    pub trunk: OpTree,
}

/// All cuts, from the root edge alone up to the whole tree.
pub fn cuts_op(t: &OpTree) -> Vec<CutTermOp> {
    let Some(op) = t.op() else {
        return vec![CutTermOp {
            crown: OpForest::single(t.clone()),
            trunk: t.clone(),
        }];
    };
    let mut out = vec![CutTermOp {
        crown: OpForest::single(t.clone()),
        trunk: OpTree::trivial(t.root_color().clone()),
    }];
    let mut partial: Vec<(OpForest, Vec<OpTree>)> = vec![(OpForest::unit(), Vec::new())];
    for child in t.children() {
        let options = cuts_op(child);
        let mut next = Vec::with_capacity(partial.len() * options.len());
        for (crown, kept) in &partial {
            for c in &options {
                let mut kept = kept.clone();
                kept.push(c.trunk.clone());
                next.push((crown.mul(&c.crown), kept));
            }
        }
        partial = next;
    }
    for (crown, kept) in partial {
        let trunk = OpTree::graft(op.clone(), kept).expect("trunk colours match the original");
        out.push(CutTermOp { crown, trunk });
    }
    out
}

pub fn coproduct_op(t: &OpTree) -> TensorSeries<OpForest> {
    cuts_op(t)
        .into_iter()
        .map(|c| ((c.crown, OpForest::single(c.trunk)), Rational::one()))
        .collect()
}

pub fn coproduct_op_forest(f: &OpForest) -> TensorSeries<OpForest> {
    let mut out = LinComb::term((OpForest::unit(), OpForest::unit()), Rational::one());
    for t in f.trees() {
        out = tensor_mul(&out, &coproduct_op(t));
    }
    out
}

/// 1 on nodeless forests, 0 otherwise.
pub fn counit_op(f: &OpForest) -> Rational {
    integer(f.is_nodeless() as i64)
}

pub fn b_plus_op(op: &Arc<OpDecl>, filling: Vec<OpTree>) -> Result<OpTree, TreeError> {
    OpTree::graft(op.clone(), filling)
}

/// B₊ᵇ on a forest: every colour-compatible assignment of the forest's trees
/// (as distinct labelled trees) to the slots of `b`, divided by |Aut(b)|.
pub fn b_plus_weighted(op: &Arc<OpDecl>, f: &OpForest) -> Result<LinComb<OpTree>, TreeError> {
    if f.len() != op.arity() {
        return Err(TreeError::Arity {
            op: op.name.clone(),
            expected: op.arity(),
            got: f.len(),
        });
    }
    if f.root_colors() != op.input_color_counts() {
        return Err(TreeError::ColorMismatch {
            op: op.name.clone(),
            detail: "forest root colours differ from the input colours".to_string(),
        });
    }
    let mut counts: BTreeMap<OpTree, u64> = BTreeMap::new();
    let mut used = vec![false; f.len()];
    let mut slots = Vec::with_capacity(f.len());
    assign(op, f.trees(), &mut used, &mut slots, &mut counts)?;
    let weight = inverse(&op.aut_order());
    Ok(counts
        .into_iter()
        .map(|(t, n)| (t, integer(n as i64) * &weight))
        .collect())
}

fn assign(
    op: &Arc<OpDecl>,
    trees: &[OpTree],
    used: &mut [bool],
    slots: &mut Vec<OpTree>,
    counts: &mut BTreeMap<OpTree, u64>,
) -> Result<(), TreeError> {
    let k = slots.len();
    if k == trees.len() {
        let t = OpTree::graft(op.clone(), slots.clone())?;
        *counts.entry(t).or_insert(0) += 1;
        return Ok(());
    }
    for i in 0..trees.len() {
        if used[i] || trees[i].root_color() != &op.inputs[k] {
            continue;
        }
        used[i] = true;
        slots.push(trees[i].clone());
        assign(op, trees, used, slots, counts)?;
        slots.pop();
        used[i] = false;
    }
    Ok(())
}

/// Always fails: nodeless forests are grouplike but not the unit, so the
/// bialgebra is not connected.
pub fn antipode_op(_t: &OpTree) -> Result<LinComb<OpForest>, HopfError> {
    Err(HopfError::NoAntipode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::hopf::{counit_sides, delta_left, delta_right};
    use crate::testutil::Table;
    use crate::trees::Grading;

    fn forest(tab: &Table, s: &str) -> OpForest {
        OpForest::parse(s, tab).unwrap()
    }

    fn generators(tab: &Table, max_nodes: usize) -> Vec<OpTree> {
        let mut out = Vec::new();
        for n in 0..=max_nodes {
            out.extend(tab.trees_with_nodes(&["b2", "s3", "c0", "u1"], &["*"], n));
            out.extend(tab.trees_with_nodes(&["f", "g", "e0"], &["a", "b"], n));
        }
        out
    }

    fn op_tensor(tab: &Table, terms: &[(&str, &str, i64)]) -> TensorSeries<OpForest> {
        terms
            .iter()
            .map(|(a, b, c)| ((forest(tab, a), forest(tab, b)), integer(*c)))
            .collect()
    }

    #[test]
    fn coproduct_examples() {
        let tab = Table::standard();
        assert_eq!(coproduct_op(&tab.tree("*")), op_tensor(&tab, &[("*", "*", 1)]));
        assert_eq!(
            coproduct_op(&tab.tree("b2(*,*)")),
            op_tensor(&tab, &[("b2(*,*)", "*", 1), ("*.*", "b2(*,*)", 1)])
        );
        // Root edge only, the root node alone, and the whole tree.
        assert_eq!(
            coproduct_op(&tab.tree("b2(b2(*,*),*)")),
            op_tensor(
                &tab,
                &[
                    ("b2(b2(*,*),*)", "*", 1),
                    ("*.b2(*,*)", "b2(*,*)", 1),
                    ("*.*.*", "b2(b2(*,*),*)", 1)
                ]
            )
        );
        assert_eq!(
            coproduct_op(&tab.tree("f(*:a,g(*:a,*:a))")),
            op_tensor(
                &tab,
                &[
                    ("f(*:a,g(*:a,*:a))", "*:a", 1),
                    ("*:a.g(*:a,*:a)", "f(*:a,*:b)", 1),
                    ("*:a.*:a.*:a", "f(*:a,g(*:a,*:a))", 1)
                ]
            )
        );
    }

    #[test]
    fn counit_examples() {
        let tab = Table::standard();
        assert_eq!(counit_op(&OpForest::unit()), integer(1));
        assert_eq!(counit_op(&forest(&tab, "*.*")), integer(1));
        assert_eq!(counit_op(&forest(&tab, "b2(*,*)")), integer(0));
        assert_eq!(antipode_op(&tab.tree("*")), Err(HopfError::NoAntipode));
    }

    #[test]
    fn b_plus_examples() {
        let tab = Table::standard();
        let b2 = tab.op("b2");
        let s2 = tab.op("s2");
        let star = tab.tree("*");
        let leaf2 = tab.tree("b2(*,*)");
        assert_eq!(b_plus_op(&b2, vec![star.clone(), star.clone()]).unwrap(), leaf2);
        assert_eq!(
            b_plus_op(&b2, vec![leaf2.clone(), star.clone()]).unwrap().as_str(),
            "b2(b2(*,*),*)"
        );
        assert!(b_plus_op(&b2, vec![star.clone(); 3]).is_err());

        let tt = forest(&tab, "b2(*,*).b2(*,*)");
        let got = b_plus_weighted(&s2, &tt).unwrap();
        assert_eq!(got, LinComb::term(tab.tree("s2(b2(*,*),b2(*,*))"), integer(1)));
        let got = b_plus_weighted(&b2, &tt).unwrap();
        assert_eq!(got, LinComb::term(tab.tree("b2(b2(*,*),b2(*,*))"), integer(2)));
        let mixed = forest(&tab, "b2(*,*).*");
        let got = b_plus_weighted(&b2, &mixed).unwrap();
        let want: LinComb<OpTree> = [
            (tab.tree("b2(b2(*,*),*)"), integer(1)),
            (tab.tree("b2(*,b2(*,*))"), integer(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        let got = b_plus_weighted(&s2, &mixed).unwrap();
        assert_eq!(got, LinComb::term(tab.tree("s2(*,b2(*,*))"), integer(1)));
        let got = b_plus_weighted(&tab.op("s3"), &forest(&tab, "*.*.*")).unwrap();
        assert_eq!(got, LinComb::term(tab.tree("s3(*,*,*)"), integer(1)));
        assert!(b_plus_weighted(&b2, &forest(&tab, "*")).is_err());
        assert!(b_plus_weighted(&tab.op("g"), &forest(&tab, "*:a.*:b")).is_err());
        let _ = rational(1, 1);
    }

    #[test]
    fn coassociative_and_counital() {
        let tab = Table::standard();
        for g in generators(&tab, 5) {
            let x = OpForest::single(g);
            assert_eq!(
                delta_left(&x, coproduct_op_forest),
                delta_right(&x, coproduct_op_forest),
                "{x}"
            );
            let (l, r) = counit_sides(&coproduct_op_forest(&x), counit_op);
            let id = LinComb::term(x.clone(), integer(1));
            assert_eq!(l, id, "{x}");
            assert_eq!(r, id, "{x}");
        }
    }

    #[test]
    fn homogeneous_in_operadic_degree() {
        let tab = Table::standard();
        for g in generators(&tab, 5) {
            for ((a, b), _) in coproduct_op(&g).iter() {
                assert_eq!(
                    a.grade(Grading::Operadic) + b.grade(Grading::Operadic),
                    g.grade(Grading::Operadic),
                    "{g}"
                );
                assert_eq!(a.node_count() + b.node_count(), g.node_count());
            }
        }
    }

    #[test]
    fn multiplicative_on_pairs() {
        let tab = Table::standard();
        let gens = generators(&tab, 2);
        for a in &gens {
            for b in &gens {
                let (a, b) = (OpForest::single(a.clone()), OpForest::single(b.clone()));
                assert_eq!(
                    coproduct_op_forest(&a.mul(&b)),
                    tensor_mul(&coproduct_op_forest(&a), &coproduct_op_forest(&b))
                );
            }
        }
    }

    /// Δ(B₊ᵇ(F)) = (Id⊗B₊ᵇ)Δ(F) + B₊ᵇ(F)⊗e on every filling of every op.
    #[test]
    fn cocycle_defect() {
        let tab = Table::standard();
        let pool = generators(&tab, 4);
        let mut checked = 0;
        for name in ["b2", "s2", "s3", "u1", "f", "g"] {
            let op = tab.op(name);
            let mut fillings = vec![Vec::<OpTree>::new()];
            for input in &op.inputs {
                let mut next = Vec::new();
                for fill in &fillings {
                    let used: usize = fill.iter().map(OpTree::node_count).sum();
                    for t in pool.iter().filter(|t| t.root_color() == input) {
                        if used + t.node_count() <= 4 {
                            let mut f = fill.clone();
                            f.push(t.clone());
                            next.push(f);
                        }
                    }
                }
                fillings = next;
            }
            for fill in fillings {
                let f = OpForest::from_trees(fill);
                let bf = b_plus_weighted(&op, &f).unwrap();
                let lhs = bf.map_linear(coproduct_op);
                let mut rhs = coproduct_op_forest(&f).map_right(|r| {
                    b_plus_weighted(&op, r)
                        .unwrap()
                        .map_linear(|t| LinComb::term(OpForest::single(t.clone()), integer(1)))
                });
                let e = OpForest::single(OpTree::trivial(op.output.clone()));
                rhs.add_assign(&bf.map_linear(|t| {
                    LinComb::term((OpForest::single(t.clone()), e.clone()), integer(1))
                }));
                assert_eq!(lhs, rhs, "{name} on {f}");
                checked += 1;
            }
        }
        assert!(checked > 100, "{checked}");
    }
}
