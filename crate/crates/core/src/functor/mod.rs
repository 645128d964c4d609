//! Polynomial functor specs, P-tree enumeration, the fixpoint identity, and
//! redecoration along cartesian morphisms.

mod enumerate;
mod fixpoint;
mod morphism;
mod spec;


pub use enumerate::{
    check_leaf_finite, enumerate_bigraded, enumerate_dead, enumerate_dead_marked, enumerate_ptrees, enumerate_sized,
    enumerate_ptrees_with,
    EnumEntry, EnumResult, DEFAULT_ARITY_CEILING,
};
pub use fixpoint::{fixpoint_check, generating_function};
pub use morphism::{morphism_preset, redecorate, MorphismSpec, OpImage, MORPHISM_PRESETS};
pub use spec::{dead_colors, preset, FamilyDecl, FunctorSpec, OpSpec, PRESET_NAMES, WHITE_PREFIX};

use thiserror::Error;

use crate::trees::TreeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("cannot read spec: {0}")]
    Parse(String),
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("name `{0}` uses the reserved prefix `white`")]
    Reserved(String),
    #[error("infinite grade: {0}")]
    InfiniteGrade(String),
    #[error("bad morphism: {0}")]
    Morphism(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}
