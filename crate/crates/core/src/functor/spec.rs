use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FunctorError;
use crate::trees::{Color, OpDecl, OpResolver, Symmetry, TreeError};

/// Name prefix reserved for the nullary ops added by [`FunctorSpec::with_white_ops`].
pub const WHITE_PREFIX: &str = "white";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSpec {
    pub name: String,
    pub output: String,
    pub inputs: Vec<String>,
    pub symmetry: Symmetry,
}

/// One op per arity in `arity_min..=arity_max`, named prefix + arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDecl {
    pub prefix: String,
    pub output: String,
    pub input_color: String,
    pub arity_min: usize,
    /// `None` means unbounded.
    pub arity_max: Option<usize>,
    pub symmetry: Symmetry,
}

impl FamilyDecl {
    pub fn contains(&self, arity: usize) -> bool {
        arity >= self.arity_min && self.arity_max.is_none_or(|m| arity <= m)
    }

    pub fn op(&self, arity: usize) -> OpDecl {
        let mut d = OpDecl::new(
            &format!("{}{arity}", self.prefix),
            Color::new(&self.output),
            vec![Color::new(&self.input_color); arity],
            self.symmetry,
        );
        d.family = Some(self.prefix.clone());
        d
    }
}

fn default_colors() -> Vec<String> {
    vec![Color::DEFAULT.to_string()]
}

/// A finitary polynomial functor: colours, concrete operations, and
/// arity-indexed families of operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSpec {
    #[serde(default = "default_colors")]
    pub colors: Vec<String>,
    #[serde(default)]
    pub ops: Vec<OpSpec>,
    #[serde(default)]
    pub families: Vec<FamilyDecl>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl FunctorSpec {
    pub fn from_json(text: &str) -> Result<Self, FunctorError> {
        let spec: FunctorSpec =
            serde_json::from_str(text).map_err(|e| FunctorError::Parse(e.to_string()))?;
        spec.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn load(path: &Path) -> Result<Self, FunctorError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FunctorError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks names, colours and arities; returns the spec unchanged.
    pub fn validate(self) -> Result<Self, FunctorError> {
        if self.colors.is_empty() {
            return Err(FunctorError::Invalid("no colours declared".into()));
        }
        let mut colors = BTreeSet::new();
        for c in &self.colors {
            if c != Color::DEFAULT && !valid_name(c) {
                return Err(FunctorError::Invalid(format!("bad colour name `{c}`")));
            }
            if !colors.insert(c.as_str()) {
                return Err(FunctorError::Invalid(format!("duplicate colour `{c}`")));
            }
        }
        let known = |c: &str| -> Result<(), FunctorError> {
            if colors.contains(c) {
                Ok(())
            } else {
                Err(FunctorError::Invalid(format!("undeclared colour `{c}`")))
            }
        };
        let mut names = BTreeSet::new();
        for op in &self.ops {
            if !valid_name(&op.name) {
                return Err(FunctorError::Invalid(format!("bad op name `{}`", op.name)));
            }
            if !names.insert(op.name.as_str()) {
                return Err(FunctorError::Invalid(format!("duplicate op `{}`", op.name)));
            }
            known(&op.output)?;
            for c in &op.inputs {
                known(c)?;
            }
        }
        for (i, fam) in self.families.iter().enumerate() {
            if !valid_name(&fam.prefix) {
                return Err(FunctorError::Invalid(format!("bad family prefix `{}`", fam.prefix)));
            }
            known(&fam.output)?;
            known(&fam.input_color)?;
            if fam.arity_max.is_some_and(|m| m < fam.arity_min) {
                return Err(FunctorError::Invalid(format!("family `{}` has an empty arity range", fam.prefix)));
            }
            for op in &self.ops {
                if family_arity(&fam.prefix, &op.name).is_some_and(|k| fam.contains(k)) {
                    return Err(FunctorError::Invalid(format!(
                        "op `{}` collides with family `{}`",
                        op.name, fam.prefix
                    )));
                }
            }
            for other in &self.families[..i] {
                let clash = other.prefix == fam.prefix
                    || family_arity(&other.prefix, &fam.prefix).is_some()
                    || family_arity(&fam.prefix, &other.prefix).is_some();
                if clash {
                    return Err(FunctorError::Invalid(format!(
                        "family prefixes `{}` and `{}` overlap",
                        other.prefix, fam.prefix
                    )));
                }
            }
        }
        Ok(self)
    }

    pub fn color_list(&self) -> Vec<Color> {
        self.colors.iter().map(|c| Color::new(c)).collect()
    }

    fn explicit(&self, op: &OpSpec) -> OpDecl {
        OpDecl::new(
            &op.name,
            Color::new(&op.output),
            op.inputs.iter().map(|c| Color::new(c)).collect(),
            op.symmetry,
        )
    }

    /// Concrete ops, with every family truncated at `max_arity`.
    pub fn instantiate_ops(&self, max_arity: usize) -> Vec<Arc<OpDecl>> {
        self.instantiate_with(|_| max_arity)
    }

    /// Concrete ops, with each family truncated at `cap(family)`.
    pub fn instantiate_with(&self, cap: impl Fn(&FamilyDecl) -> usize) -> Vec<Arc<OpDecl>> {
        let mut out: Vec<Arc<OpDecl>> = self.ops.iter().map(|o| Arc::new(self.explicit(o))).collect();
        for fam in &self.families {
            let top = fam.arity_max.map_or(cap(fam), |m| m.min(cap(fam)));
            for k in fam.arity_min..=top {
                out.push(Arc::new(fam.op(k)));
            }
        }
        out
    }

    pub fn op(&self, name: &str) -> Option<Arc<OpDecl>> {
        if let Some(op) = self.ops.iter().find(|o| o.name == name) {
            return Some(Arc::new(self.explicit(op)));
        }
        self.families.iter().find_map(|fam| {
            let k = family_arity(&fam.prefix, name)?;
            fam.contains(k).then(|| Arc::new(fam.op(k)))
        })
    }

    pub fn has_nullary(&self) -> bool {
        self.ops.iter().any(|o| o.inputs.is_empty()) || self.families.iter().any(|f| f.arity_min == 0)
    }

    /// Q = 1 + P: one fresh nullary op `white<i>` for the i-th colour.
    pub fn with_white_ops(&self) -> Result<FunctorSpec, FunctorError> {
        let taken = self
            .ops
            .iter()
            .map(|o| o.name.as_str())
            .chain(self.families.iter().map(|f| f.prefix.as_str()))
            .find(|n| n.starts_with(WHITE_PREFIX));
        if let Some(name) = taken {
            return Err(FunctorError::Reserved(name.to_string()));
        }
        let mut q = self.clone();
        for (i, c) in self.colors.iter().enumerate() {
            q.ops.push(OpSpec {
                name: format!("{WHITE_PREFIX}{i}"),
                output: c.clone(),
                inputs: Vec::new(),
                symmetry: Symmetry::Planar,
            });
        }
        Ok(q)
    }
}

/// The arity encoded in `name` if it is `prefix` followed by digits only.
fn family_arity(prefix: &str, name: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

impl OpResolver for FunctorSpec {
    fn resolve_op(&self, name: &str) -> Option<Arc<OpDecl>> {
        self.op(name)
    }

    fn resolve_color(&self, name: Option<&str>) -> Result<Color, TreeError> {
        match name {
            Some(n) if self.colors.iter().any(|c| c == n) => Ok(Color::new(n)),
            Some(n) => Err(TreeError::UnknownColor(n.to_string())),
            None if self.colors.len() == 1 => Ok(Color::new(&self.colors[0])),
            None if self.colors.iter().any(|c| c == Color::DEFAULT) => Ok(Color::default_color()),
            None => Err(TreeError::MissingColor),
        }
    }
}

fn star() -> String {
    Color::DEFAULT.to_string()
}

fn family(prefix: &str, min: usize, max: Option<usize>, symmetry: Symmetry) -> FamilyDecl {
    FamilyDecl {
        prefix: prefix.to_string(),
        output: star(),
        input_color: star(),
        arity_min: min,
        arity_max: max,
        symmetry,
    }
}

fn single(families: Vec<FamilyDecl>, ops: Vec<OpSpec>) -> FunctorSpec {
    FunctorSpec {
        colors: default_colors(),
        ops,
        families,
    }
}

fn planar_op(name: &str, arity: usize) -> OpSpec {
    OpSpec {
        name: name.to_string(),
        output: star(),
        inputs: vec![star(); arity],
        symmetry: Symmetry::Planar,
    }
}

pub const PRESET_NAMES: &[&str] = &[
    "binary",
    "list",
    "stable-planar",
    "exp",
    "exp-stable",
    "ternary-foissy",
    "two-color",
];

/// Built-in specs, then `$DYSON_PRESET_DIR/<name>.json`.
pub fn preset(name: &str) -> Result<FunctorSpec, FunctorError> {
    let spec = match name {
        "binary" => single(vec![], vec![planar_op("b2", 2)]),
        "list" => single(vec![family("p", 0, None, Symmetry::Planar)], vec![]),
        "stable-planar" => single(vec![family("p", 2, None, Symmetry::Planar)], vec![]),
        "exp" => single(vec![family("s", 0, None, Symmetry::Symmetric)], vec![]),
        "exp-stable" => single(vec![family("s", 2, None, Symmetry::Symmetric)], vec![]),
        // (1+Y)³ expanded: a node picks which of three slots are open.
        "ternary-foissy" => single(
            vec![],
            [("n0", 0), ("u1", 1), ("u2", 1), ("u3", 1), ("b12", 2), ("b13", 2), ("b23", 2), ("t123", 3)]
                .iter()
                .map(|(n, k)| planar_op(n, *k))
                .collect(),
        ),
        "two-color" => {
            let op = |name: &str, out: &str, ins: &[&str], symmetry| OpSpec {
                name: name.to_string(),
                output: out.to_string(),
                inputs: ins.iter().map(|c| c.to_string()).collect(),
                symmetry,
            };
            FunctorSpec {
                colors: vec!["a".into(), "b".into()],
                ops: vec![
                    op("f", "a", &["a", "b"], Symmetry::Planar),
                    op("g", "b", &["a", "a"], Symmetry::Symmetric),
                    op("h", "b", &["b", "b", "b"], Symmetry::Planar),
                ],
                families: vec![],
            }
        }
        _ => {
            let dir = std::env::var_os("DYSON_PRESET_DIR")
                .ok_or_else(|| FunctorError::UnknownPreset(name.to_string()))?;
            let path = Path::new(&dir).join(format!("{name}.json"));
            if !path.is_file() {
                return Err(FunctorError::UnknownPreset(name.to_string()));
            }
            return FunctorSpec::load(&path);
        }
    };
    spec.validate()
}

/// Least set of colours that admit a tree without leaves.
pub fn dead_colors(ops: &[Arc<OpDecl>], spec: &FunctorSpec) -> BTreeSet<Color> {
    let mut dead = BTreeSet::new();
    loop {
        let before = dead.len();
        for op in ops {
            if op.inputs.iter().all(|c| dead.contains(c)) {
                dead.insert(op.output.clone());
            }
        }
        for fam in &spec.families {
            let input = Color::new(&fam.input_color);
            if fam.arity_min == 0 || dead.contains(&input) {
                dead.insert(Color::new(&fam.output));
            }
        }
        if dead.len() == before {
            return dead;
        }
    }
}

/// Colour counts of a set of op inputs, as used by redecoration checks.
pub(crate) fn color_counts(colors: &[Color]) -> BTreeMap<Color, usize> {
    let mut out = BTreeMap::new();
    for c in colors {
        *out.entry(c.clone()).or_insert(0) += 1;
    }
    out
}
