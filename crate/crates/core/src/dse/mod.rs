//! Dyson–Schwinger equations: the combinatorial solvers in the
//! Connes–Kreimer basis, Green functions of P-trees, and the identities that
//! tie the two together.

mod dead;
mod equation;
mod foissy;
mod green;
mod solve;


pub use dead::{
    check_coideal, check_dead_equivalence, check_dead_foissy, dead_core_pushforward, dead_equivalence_table, DeadTable,
};
pub use equation::{
    equation_preset, paired_equation, paired_spec, BKEquation, Equation, FoissyEquation, FoissyF, Weights,
    EQUATION_PRESETS,
};
pub use foissy::{check_foissy_interpretation, planar_embeddings, FoissyKind};
pub use green::{check_core_theorem, check_fdb, core_pushforward, green_function, GreenFunction};
pub use solve::{as_series, check_hopf_subalgebra, fdb_coproduct, solve_bk, solve_foissy};

use thiserror::Error;

use crate::algebra::{AlgebraError, Rational};
use crate::functor::FunctorError;
use crate::trees::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DseError {
    #[error("bad equation: {0}")]
    Equation(String),
    #[error("unknown equation preset `{0}`")]
    UnknownPreset(String),
    #[error("f must start with p0 = 1, got p0 = {0}")]
    ConstantTerm(Rational),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
