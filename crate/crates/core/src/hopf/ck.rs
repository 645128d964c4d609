use std::collections::HashMap;

use num_traits::One;

use super::tensor_mul;
use crate::algebra::{integer, LinComb, Rational, TensorSeries};
use crate::trees::{CombTree, Forest};

/// One admissible cut: the crown above, the trunk (containing the root)
/// below. The empty cut has trunk `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutTermCK {
    pub crown: Forest,
    pub trunk: Option<CombTree>,
}

/// Cuts whose trunk is a nonempty root-containing subtree.
fn rooted_cuts(t: &CombTree) -> Vec<(Forest, CombTree)> {
    // For each child: either cut it off whole, or keep a rooted part of it.
    let mut partial: Vec<(Forest, Vec<CombTree>)> = vec![(Forest::unit(), Vec::new())];
    for child in t.children() {
        let mut options: Vec<(Forest, Option<CombTree>)> = vec![(Forest::single(child.clone()), None)];
        options.extend(rooted_cuts(child).into_iter().map(|(c, s)| (c, Some(s))));
        let mut next = Vec::with_capacity(partial.len() * options.len());
        for (crown, kept) in &partial {
            for (c, s) in &options {
                let mut kept = kept.clone();
                kept.extend(s.iter().cloned());
                next.push((crown.mul(c), kept));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(crown, kept)| (crown, CombTree::from_children(kept)))
        .collect()
}

/// All admissible cuts of `t`, including the empty cut and the full trunk.
pub fn cuts_ck(t: &CombTree) -> Vec<CutTermCK> {
    let mut out = vec![CutTermCK {
        crown: Forest::single(t.clone()),
        trunk: None,
    }];
    out.extend(rooted_cuts(t).into_iter().map(|(crown, trunk)| CutTermCK {
        crown,
        trunk: Some(trunk),
    }));
    out
}

pub fn coproduct_ck(t: &CombTree) -> TensorSeries<Forest> {
    cuts_ck(t)
        .into_iter()
        .map(|c| {
            let trunk = c.trunk.map(Forest::single).unwrap_or_else(Forest::unit);
            ((c.crown, trunk), Rational::one())
        })
        .collect()
}

/// Δ extended multiplicatively; Δ(1) = 1⊗1.
pub fn coproduct_forest(f: &Forest) -> TensorSeries<Forest> {
    let mut out = LinComb::term((Forest::unit(), Forest::unit()), Rational::one());
    for t in f.trees() {
        out = tensor_mul(&out, &coproduct_ck(t));
    }
    out
}

pub fn counit_ck(f: &Forest) -> Rational {
    integer(f.is_unit() as i64)
}

pub fn b_plus_ck(f: &Forest) -> CombTree {
    f.graft()
}

/// S(t) = −t − Σ S(crown)·trunk over cuts with nonempty crown and trunk.
pub fn antipode_ck(t: &CombTree) -> LinComb<Forest> {
    antipode_memo(t, &mut HashMap::new())
}

pub fn antipode_forest(f: &Forest) -> LinComb<Forest> {
    let mut memo = HashMap::new();
    forest_antipode_memo(f, &mut memo)
}

fn forest_antipode_memo(f: &Forest, memo: &mut HashMap<CombTree, LinComb<Forest>>) -> LinComb<Forest> {
    let mut out = LinComb::term(Forest::unit(), Rational::one());
    for t in f.trees() {
        let s = antipode_memo(t, memo);
        let mut next = LinComb::zero();
        for (a, c) in out.iter() {
            for (b, d) in s.iter() {
                next.add_term(a.mul(b), c * d);
            }
        }
        out = next;
    }
    out
}

fn antipode_memo(t: &CombTree, memo: &mut HashMap<CombTree, LinComb<Forest>>) -> LinComb<Forest> {
    if let Some(s) = memo.get(t) {
        return s.clone();
    }
    let mut out = LinComb::term(Forest::single(t.clone()), integer(-1));
    for (crown, trunk) in rooted_cuts(t) {
        if crown.is_unit() {
            continue;
        }
        let s = forest_antipode_memo(&crown, memo);
        let trunk = Forest::single(trunk);
        for (f, c) in s.iter() {
            out.add_term(f.mul(&trunk), -c);
        }
    }
    memo.insert(t.clone(), out.clone());
    out
}
