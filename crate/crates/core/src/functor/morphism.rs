use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::spec::{color_counts, FunctorSpec};
use super::FunctorError;
use crate::trees::{Color, OpDecl, OpTree, Symmetry};

/// Where one source op goes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpImage {
    pub target: String,
    /// Source slot j lands in target slot `slots[j]`; identity if absent.
    #[serde(default)]
    pub slots: Option<Vec<usize>>,
}

/// A cartesian morphism between two functor specs, given on colours, on
/// named ops, and on family prefixes (arity is kept).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    #[serde(default)]
    pub color_map: BTreeMap<String, String>,
    #[serde(default)]
    pub op_map: BTreeMap<String, OpImage>,
    #[serde(default)]
    pub family_map: BTreeMap<String, String>,
}

impl MorphismSpec {
    pub fn map_color(&self, c: &Color) -> Color {
        match self.color_map.get(c.as_str()) {
            Some(d) => Color::new(d),
            None => c.clone(),
        }
    }

    /// The target op of `op` and the slot permutation, checked for arity,
    /// colours and symmetry.
    pub fn image(&self, op: &OpDecl, target: &FunctorSpec) -> Result<(Arc<OpDecl>, Vec<usize>), FunctorError> {
        let bad = |why: String| FunctorError::Morphism(format!("op `{}`: {why}", op.name));
        let (name, slots) = if let Some(img) = self.op_map.get(&op.name) {
            (img.target.clone(), img.slots.clone())
        } else if let Some(prefix) = op.family.as_ref().and_then(|f| self.family_map.get(f)) {
            (format!("{prefix}{}", op.arity()), None)
        } else {
            return Err(bad("not in the morphism's domain".into()));
        };
        let tgt = target
            .op(&name)
            .ok_or_else(|| bad(format!("target op `{name}` does not exist")))?;
        if tgt.arity() != op.arity() {
            return Err(bad(format!("arity {} goes to arity {}", op.arity(), tgt.arity())));
        }
        let slots = slots.unwrap_or_else(|| (0..op.arity()).collect());
        let mut seen = vec![false; op.arity()];
        if slots.len() != op.arity() || slots.iter().any(|&s| s >= op.arity() || std::mem::replace(&mut seen[s], true)) {
            return Err(bad("slot map is not a permutation".into()));
        }
        if self.map_color(&op.output) != tgt.output {
            return Err(bad("output colours disagree".into()));
        }
        match (op.symmetry, tgt.symmetry) {
            (Symmetry::Symmetric, Symmetry::Planar) => {
                return Err(bad("a symmetric op cannot be sent to a planar one".into()));
            }
            (Symmetry::Symmetric, Symmetry::Symmetric) => {
                let mapped: Vec<Color> = op.inputs.iter().map(|c| self.map_color(c)).collect();
                if color_counts(&mapped) != color_counts(&tgt.inputs) {
                    return Err(bad("input colours disagree".into()));
                }
            }
            (Symmetry::Planar, _) => {
                for (j, c) in op.inputs.iter().enumerate() {
                    if self.map_color(c) != tgt.inputs[slots[j]] {
                        return Err(bad(format!("slot {j} colour disagrees")));
                    }
                }
            }
        }
        Ok((tgt, slots))
    }

    /// Checks every op of `source` up to `max_arity`.
    pub fn validate(&self, source: &FunctorSpec, target: &FunctorSpec, max_arity: usize) -> Result<(), FunctorError> {
        for c in &source.colors {
            let d = self.map_color(&Color::new(c));
            if !target.colors.iter().any(|t| t == d.as_str()) {
                return Err(FunctorError::Morphism(format!("colour `{c}` maps outside the target")));
            }
        }
        for op in source.instantiate_ops(max_arity) {
            self.image(&op, target)?;
        }
        Ok(())
    }
}

/// Relabels nodes and edges of `t` along `m` and re-canonicalizes.
pub fn redecorate(m: &MorphismSpec, target: &FunctorSpec, t: &OpTree) -> Result<OpTree, FunctorError> {
    let Some(op) = t.op() else {
        return Ok(OpTree::trivial(m.map_color(t.root_color())));
    };
    let (tgt, slots) = m.image(op, target)?;
    let mut children: Vec<Option<OpTree>> = vec![None; slots.len()];
    for (j, child) in t.children().iter().enumerate() {
        children[slots[j]] = Some(redecorate(m, target, child)?);
    }
    let children = children.into_iter().map(|c| c.expect("permutation")).collect();
    Ok(OpTree::graft(tgt, children)?)
}

pub const MORPHISM_PRESETS: &[&str] = &["binary-to-list", "list-to-exp", "stable-planar-to-exp-stable", "binary-to-exp-stable"];

/// A bundled morphism with its source and target preset names.
pub fn morphism_preset(name: &str) -> Result<(MorphismSpec, &'static str, &'static str), FunctorError> {
    let op = |from: &str, to: &str| {
        let mut m = MorphismSpec::default();
        m.op_map.insert(
            from.to_string(),
            OpImage {
                target: to.to_string(),
                slots: None,
            },
        );
        m
    };
    let family = |from: &str, to: &str| {
        let mut m = MorphismSpec::default();
        m.family_map.insert(from.to_string(), to.to_string());
        m
    };
    Ok(match name {
        "binary-to-list" => (op("b2", "p2"), "binary", "list"),
        "list-to-exp" => (family("p", "s"), "list", "exp"),
        "stable-planar-to-exp-stable" => (family("p", "s"), "stable-planar", "exp-stable"),
        "binary-to-exp-stable" => (op("b2", "s2"), "binary", "exp-stable"),
        _ => return Err(FunctorError::UnknownPreset(name.to_string())),
    })
}
