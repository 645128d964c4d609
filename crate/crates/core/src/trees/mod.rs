//! Rooted trees in two flavours.
//!
//! [`CombTree`] / [`Forest`] are the unordered combinatorial trees that form
//! the monomial basis of the Connes–Kreimer algebra. [`OpTree`] /
//! [`OpForest`] are operadic trees: nodes carry operations, edges carry
//! colours, and the leaves and the root are open-ended edges.
//!
//! Every tree value is canonical on construction and carries its canonical
//! string, so equality, ordering and hashing are plain string comparisons.

mod comb;
mod op;
mod parse;

pub use comb::{CombTree, Forest};
pub use op::{Grading, OpDecl, OpForest, OpResolver, OpTree, Symmetry};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An edge colour. Single-coloured functors use the default colour `*`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(Arc<str>);

impl Color {
    pub const DEFAULT: &'static str = "*";

    pub fn new(name: &str) -> Self {
        Color(Arc::from(name))
    }

    pub fn default_color() -> Self {
        Color::new(Self::DEFAULT)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_default(&self) -> bool {
        &*self.0 == Self::DEFAULT
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Color({})", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("unbalanced brackets at byte {offset}")]
    Unbalanced { offset: usize },
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("unknown colour `{0}`")]
    UnknownColor(String),
    #[error("leaf needs an explicit colour suffix in a multi-colour functor")]
    MissingColor,
    #[error("operation `{op}` has arity {expected}, got {got} inputs")]
    Arity {
        op: String,
        expected: usize,
        got: usize,
    },
    #[error("operation `{op}`: input colours do not match ({detail})")]
    ColorMismatch { op: String, detail: String },
}
