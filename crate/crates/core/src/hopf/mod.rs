//! Cut coproducts, counits, grafting operators and the antipode.
//!
//! Tensors are always written crown ⊗ trunk: the left factor is what lies
//! above the cut, the right factor is the part containing the root.

mod checks;
mod ck;
mod operadic;

pub use checks::{check_coassoc_ck, check_coassoc_op, check_cocycle_ck, check_cocycle_op};
pub use ck::{
    antipode_ck, antipode_forest, b_plus_ck, coproduct_ck, coproduct_forest, counit_ck, cuts_ck,
    CutTermCK,
};
pub use operadic::{
    antipode_op, b_plus_op, b_plus_weighted, coproduct_op, coproduct_op_forest, counit_op, cuts_op,
    CutTermOp,
};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{LinComb, Monomial, Rational, TensorSeries, TripleSeries};
use crate::trees::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("the bialgebra of operadic trees is not connected and has no antipode")]
    NoAntipode,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Product in the tensor square: (a⊗b)(c⊗d) = ac⊗bd.
pub fn tensor_mul<B: Monomial>(x: &TensorSeries<B>, y: &TensorSeries<B>) -> TensorSeries<B> {
    let mut out = LinComb::zero();
    for ((a, b), c) in x.iter() {
        for ((d, e), f) in y.iter() {
            out.add_term((a.times(d), b.times(e)), c * f);
        }
    }
    out
}

/// (Δ⊗Id)Δ(x) for a coproduct given on monomials.
pub fn delta_left<B: Monomial>(x: &B, delta: impl Fn(&B) -> TensorSeries<B>) -> TripleSeries<B> {
    let mut out = LinComb::zero();
    for ((l, r), c) in delta(x).iter() {
        for ((l1, l2), d) in delta(l).iter() {
            out.add_term((l1.clone(), l2.clone(), r.clone()), c * d);
        }
    }
    out
}

/// (Id⊗Δ)Δ(x).
pub fn delta_right<B: Monomial>(x: &B, delta: impl Fn(&B) -> TensorSeries<B>) -> TripleSeries<B> {
    let mut out = LinComb::zero();
    for ((l, r), c) in delta(x).iter() {
        for ((r1, r2), d) in delta(r).iter() {
            out.add_term((l.clone(), r1.clone(), r2.clone()), c * d);
        }
    }
    out
}

/// (ε⊗Id)(t) and (Id⊗ε)(t).
pub fn counit_sides<B: Monomial>(
    t: &TensorSeries<B>,
    eps: impl Fn(&B) -> Rational,
) -> (LinComb<B>, LinComb<B>) {
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for ((l, r), c) in t.iter() {
        let el = eps(l);
        if !el.is_zero() {
            left.add_term(r.clone(), c * el);
        }
        let er = eps(r);
        if !er.is_zero() {
            right.add_term(l.clone(), c * er);
        }
    }
    (left, right)
}
