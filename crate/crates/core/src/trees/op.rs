use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::parse::Cursor;
use super::{Color, CombTree, Forest, TreeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    /// Inputs are ordered; no automorphisms.
    Planar,
    /// Inputs of equal colour may be permuted freely.
    Symmetric,
}

/// Which integer grading to read off a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Leaves,
    Nodes,
    /// Leaves minus roots.
    Operadic,
}

/// A concrete operation: output colour, input colours, symmetry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpDecl {
    pub name: String,
    pub output: Color,
    pub inputs: Vec<Color>,
    pub symmetry: Symmetry,
    /// Prefix of the family this op was instantiated from, if any.
    pub family: Option<String>,
}

impl OpDecl {
    pub fn new(name: &str, output: Color, inputs: Vec<Color>, symmetry: Symmetry) -> Self {
        OpDecl {
            name: name.to_string(),
            output,
            inputs,
            symmetry,
            family: None,
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// Order of the automorphism group of the corolla: trivial for planar
    /// ops, the product of block factorials for symmetric ones.
    pub fn aut_order(&self) -> BigUint {
        let mut total = BigUint::one();
        if self.symmetry == Symmetry::Symmetric {
            for count in self.input_color_counts().values() {
                for k in 1..=*count {
                    total *= BigUint::from(k);
                }
            }
        }
        total
    }

    pub fn input_color_counts(&self) -> BTreeMap<Color, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.inputs {
            *counts.entry(c.clone()).or_insert(0) += 1;
        }
        counts
    }
}

/// Name and colour lookup used when parsing operadic trees.
pub trait OpResolver {
    fn resolve_op(&self, name: &str) -> Option<Arc<OpDecl>>;

    /// Resolves an explicit colour suffix, or the implied colour of a bare
    /// `*` when `name` is `None`.
    fn resolve_color(&self, name: Option<&str>) -> Result<Color, TreeError>;
}

/// An operadic tree, canonical on construction.
///
/// Either the trivial tree (a lone edge) or a node decorated by an operation
/// with one subtree per input slot; leaves are trivial subtrees.
#[derive(Clone)]
pub struct OpTree(Arc<OpNode>);

struct OpNode {
    color: Color,
    op: Option<Arc<OpDecl>>,
    children: Vec<OpTree>,
    repr: String,
    leaves: usize,
    nodes: usize,
}

fn leaf_first(a: &OpTree, b: &OpTree) -> Ordering {
    b.is_trivial()
        .cmp(&a.is_trivial())
        .then_with(|| a.as_str().as_bytes().cmp(b.as_str().as_bytes()))
}

impl OpTree {
    pub fn trivial(color: Color) -> Self {
        let repr = if color.is_default() {
            "*".to_string()
        } else {
            format!("*:{color}")
        };
        OpTree(Arc::new(OpNode {
            color,
            op: None,
            children: Vec::new(),
            repr,
            leaves: 1,
            nodes: 0,
        }))
    }

    /// Grafts `children` onto a corolla decorated by `op`.
    ///
    /// Planar ops take the children positionally. Symmetric ops accept them
    /// in any order as long as the colours agree as a multiset; they are
    /// then sorted within each equal-colour block.
    pub fn graft(op: Arc<OpDecl>, children: Vec<OpTree>) -> Result<Self, TreeError> {
        if children.len() != op.arity() {
            return Err(TreeError::Arity {
                op: op.name.clone(),
                expected: op.arity(),
                got: children.len(),
            });
        }
        let children = match op.symmetry {
            Symmetry::Planar => {
                for (slot, (want, child)) in op.inputs.iter().zip(&children).enumerate() {
                    if child.root_color() != want {
                        return Err(TreeError::ColorMismatch {
                            op: op.name.clone(),
                            detail: format!(
                                "slot {slot} wants `{want}`, got `{}`",
                                child.root_color()
                            ),
                        });
                    }
                }
                children
            }
            Symmetry::Symmetric => {
                let mut by_color: BTreeMap<Color, Vec<OpTree>> = BTreeMap::new();
                for child in children {
                    by_color.entry(child.root_color().clone()).or_default().push(child);
                }
                let wanted = op.input_color_counts();
                let got: BTreeMap<Color, usize> =
                    by_color.iter().map(|(c, v)| (c.clone(), v.len())).collect();
                if wanted != got {
                    return Err(TreeError::ColorMismatch {
                        op: op.name.clone(),
                        detail: "input colours differ as a multiset".to_string(),
                    });
                }
                for block in by_color.values_mut() {
                    block.sort_by(leaf_first);
                    block.reverse();
                }
                op.inputs
                    .iter()
                    .map(|c| by_color.get_mut(c).and_then(Vec::pop).expect("counted above"))
                    .collect()
            }
        };
        Ok(Self::node_unchecked(op, children))
    }

    fn node_unchecked(op: Arc<OpDecl>, children: Vec<OpTree>) -> Self {
        let mut repr = String::with_capacity(op.name.len() + 2 + children.iter().map(|c| c.as_str().len() + 1).sum::<usize>());
        repr.push_str(&op.name);
        repr.push('(');
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                repr.push(',');
            }
            repr.push_str(c.as_str());
        }
        repr.push(')');
        let leaves = children.iter().map(OpTree::leaves).sum();
        let nodes = 1 + children.iter().map(OpTree::node_count).sum::<usize>();
        OpTree(Arc::new(OpNode {
            color: op.output.clone(),
            op: Some(op),
            children,
            repr,
            leaves,
            nodes,
        }))
    }

    pub fn parse(text: &str, resolver: &dyn OpResolver) -> Result<Self, TreeError> {
        let mut cur = Cursor::new(text);
        let t = Self::parse_from(&mut cur, resolver)?;
        cur.finish()?;
        Ok(t)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>, resolver: &dyn OpResolver) -> Result<Self, TreeError> {
        const STOP: &[u8] = b",().:*[]";
        if cur.eat(b'*') {
            let color = Self::parse_suffix(cur)?;
            let color = resolver.resolve_color(color)?;
            return Ok(OpTree::trivial(color));
        }
        let offset = cur.offset();
        let name = cur.token(STOP);
        if name.is_empty() {
            return Err(TreeError::Syntax {
                offset,
                expected: "`*` or an operation name",
            });
        }
        let op = resolver
            .resolve_op(name)
            .ok_or_else(|| TreeError::UnknownOp(name.to_string()))?;
        cur.expect(b'(', "`(`")?;
        let mut children = Vec::new();
        if !cur.eat(b')') {
            loop {
                children.push(Self::parse_from(cur, resolver)?);
                if cur.eat(b',') {
                    continue;
                }
                cur.expect(b')', "`,` or `)`")?;
                break;
            }
        }
        if let Some(suffix) = Self::parse_suffix(cur)? {
            let color = resolver.resolve_color(Some(suffix))?;
            if color != op.output {
                return Err(TreeError::ColorMismatch {
                    op: op.name.clone(),
                    detail: format!("output colour is `{}`, suffix says `{color}`", op.output),
                });
            }
        }
        Self::graft(op, children)
    }

    fn parse_suffix<'a>(cur: &mut Cursor<'a>) -> Result<Option<&'a str>, TreeError> {
        if !cur.eat(b':') {
            return Ok(None);
        }
        let offset = cur.offset();
        let name = cur.token(b",().:[]");
        if name.is_empty() {
            return Err(TreeError::Syntax {
                offset,
                expected: "a colour name",
            });
        }
        Ok(Some(name))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.op.is_none()
    }

    pub fn root_color(&self) -> &Color {
        &self.0.color
    }

    pub fn op(&self) -> Option<&Arc<OpDecl>> {
        self.0.op.as_ref()
    }

    /// Subtrees above the root node in slot order (leaves are trivial trees).
    pub fn children(&self) -> &[OpTree] {
        &self.0.children
    }

    pub fn as_str(&self) -> &str {
        &self.0.repr
    }

    pub fn leaves(&self) -> usize {
        self.0.leaves
    }

    pub fn node_count(&self) -> usize {
        self.0.nodes
    }

    /// Leaves minus the one root; `-1` for trees without leaves.
    pub fn operadic_degree(&self) -> i64 {
        self.0.leaves as i64 - 1
    }

    pub fn grade(&self, mode: Grading) -> i64 {
        match mode {
            Grading::Leaves => self.0.leaves as i64,
            Grading::Nodes => self.0.nodes as i64,
            Grading::Operadic => self.operadic_degree(),
        }
    }

    /// Colours of all leaves, as a multiset.
    pub fn leaf_colors(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        fn walk(t: &OpTree, out: &mut BTreeMap<Color, usize>) {
            if t.is_trivial() {
                *out.entry(t.root_color().clone()).or_insert(0) += 1;
            }
            for c in t.children() {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }

    /// Number of automorphisms fixing the root edge.
    pub fn aut_order(&self) -> BigUint {
        let mut total = BigUint::one();
        for c in self.children() {
            total *= c.aut_order();
        }
        if let Some(op) = self.op() {
            if op.symmetry == Symmetry::Symmetric {
                // Equal children of equal colour sit next to each other
                // once we group slot positions by colour.
                for color in op.input_color_counts().keys() {
                    let block: Vec<&OpTree> = op
                        .inputs
                        .iter()
                        .zip(self.children())
                        .filter(|(c, _)| *c == color)
                        .map(|(_, t)| t)
                        .collect();
                    let mut i = 0;
                    while i < block.len() {
                        let mut j = i;
                        while j < block.len() && block[j] == block[i] {
                            j += 1;
                        }
                        for k in 1..=(j - i) {
                            total *= BigUint::from(k);
                        }
                        i = j;
                    }
                }
            }
        }
        total
    }

    /// The combinatorial tree of inner edges, or `None` for the trivial tree.
    pub fn core_tree(&self) -> Option<CombTree> {
        self.op()?;
        let kids = self.children().iter().filter_map(OpTree::core_tree).collect();
        Some(CombTree::from_children(kids))
    }

    /// Core as a forest: the unit for the trivial tree, else a single tree.
    pub fn core(&self) -> Forest {
        match self.core_tree() {
            Some(t) => Forest::single(t),
            None => Forest::unit(),
        }
    }
}

impl PartialEq for OpTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.repr == other.0.repr
    }
}

impl Eq for OpTree {}

impl PartialOrd for OpTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.repr.as_bytes().cmp(other.0.repr.as_bytes())
    }
}

impl Hash for OpTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.repr.hash(state);
    }
}

impl fmt::Display for OpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.repr)
    }
}

impl fmt::Debug for OpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpTree({})", self.0.repr)
    }
}

/// A multiset of operadic trees. The empty forest is the unit `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpForest {
    trees: Vec<OpTree>,
}

impl OpForest {
    pub fn unit() -> Self {
        OpForest { trees: Vec::new() }
    }

    pub fn single(tree: OpTree) -> Self {
        OpForest { trees: vec![tree] }
    }

    pub fn from_trees(mut trees: Vec<OpTree>) -> Self {
        trees.sort();
        OpForest { trees }
    }

    pub fn trees(&self) -> &[OpTree] {
        &self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn mul(&self, other: &OpForest) -> OpForest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        OpForest::from_trees(trees)
    }

    /// True when no tree has a node (the empty forest included).
    pub fn is_nodeless(&self) -> bool {
        self.trees.iter().all(OpTree::is_trivial)
    }

    pub fn leaves(&self) -> usize {
        self.trees.iter().map(OpTree::leaves).sum()
    }

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(OpTree::node_count).sum()
    }

    pub fn roots(&self) -> usize {
        self.trees.len()
    }

    pub fn grade(&self, mode: Grading) -> i64 {
        match mode {
            Grading::Leaves => self.leaves() as i64,
            Grading::Nodes => self.node_count() as i64,
            Grading::Operadic => self.leaves() as i64 - self.roots() as i64,
        }
    }

    pub fn root_colors(&self) -> BTreeMap<Color, usize> {
        let mut out = BTreeMap::new();
        for t in &self.trees {
            *out.entry(t.root_color().clone()).or_insert(0) += 1;
        }
        out
    }

    /// Product of the cores of the trees.
    pub fn core(&self) -> Forest {
        Forest::from_trees(self.trees.iter().filter_map(OpTree::core_tree).collect())
    }

    pub fn parse(text: &str, resolver: &dyn OpResolver) -> Result<Self, TreeError> {
        let mut cur = Cursor::new(text);
        if cur.peek() == Some(b'1') {
            cur.eat(b'1');
            cur.finish()?;
            return Ok(OpForest::unit());
        }
        let mut trees = vec![OpTree::parse_from(&mut cur, resolver)?];
        while cur.eat(b'.') {
            trees.push(OpTree::parse_from(&mut cur, resolver)?);
        }
        cur.finish()?;
        Ok(OpForest::from_trees(trees))
    }
}

impl fmt::Display for OpForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(t.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpForest({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    /// Minimal resolver: named ops over colours `*`, `a`, `b`.
    struct Table(HashMap<String, Arc<OpDecl>>);

    impl Table {
        fn new() -> Self {
            let star = Color::default_color;
            let a = || Color::new("a");
            let b = || Color::new("b");
            let mut m = HashMap::new();
            let mut add = |d: OpDecl| {
                m.insert(d.name.clone(), Arc::new(d));
            };
            add(OpDecl::new("b2", star(), vec![star(), star()], Symmetry::Planar));
            add(OpDecl::new("s2", star(), vec![star(), star()], Symmetry::Symmetric));
            add(OpDecl::new("s3", star(), vec![star(); 3], Symmetry::Symmetric));
            add(OpDecl::new("s4", star(), vec![star(); 4], Symmetry::Symmetric));
            add(OpDecl::new("c0", star(), vec![], Symmetry::Planar));
            add(OpDecl::new("m", a(), vec![a(), b(), a()], Symmetry::Symmetric));
            add(OpDecl::new("g", b(), vec![a()], Symmetry::Planar));
            Table(m)
        }
    }

    impl OpResolver for Table {
        fn resolve_op(&self, name: &str) -> Option<Arc<OpDecl>> {
            self.0.get(name).cloned()
        }
        fn resolve_color(&self, name: Option<&str>) -> Result<Color, TreeError> {
            match name {
                None => Ok(Color::default_color()),
                Some(n) if ["*", "a", "b"].contains(&n) => Ok(Color::new(n)),
                Some(n) => Err(TreeError::UnknownColor(n.to_string())),
            }
        }
    }

    fn t(s: &str) -> OpTree {
        OpTree::parse(s, &Table::new()).unwrap()
    }

    #[test]
    fn aut_orders() {
        assert_eq!(t("s2(*,*)").aut_order(), BigUint::from(2u32));
        assert_eq!(t("s4(*,*,*,*)").aut_order(), BigUint::from(24u32));
        assert_eq!(t("b2(*,*)").aut_order(), BigUint::from(1u32));
        assert_eq!(t("*").aut_order(), BigUint::from(1u32));
        assert_eq!(t("s2(s2(*,*),*)").aut_order(), BigUint::from(2u32));
        assert_eq!(t("s2(s2(*,*),s2(*,*))").aut_order(), BigUint::from(8u32));
        assert_eq!(t("b2(s2(*,*),s2(*,*))").aut_order(), BigUint::from(4u32));
        // Only the two `a` slots of `m` may be swapped.
        assert_eq!(t("m(*:a,*:b,*:a)").aut_order(), BigUint::from(2u32));
    }

    #[test]
    fn core_examples() {
        assert_eq!(t("*").core(), Forest::unit());
        assert_eq!(t("b2(*,*)").core().to_string(), "[]");
        assert_eq!(t("b2(b2(*,*),*)").core().to_string(), "[[]]");
        assert_eq!(t("c0()").core().to_string(), "[]");
        assert_eq!(t("s3(b2(*,*),*,b2(c0(),*))").core().to_string(), "[[[]],[]]");
    }

    #[test]
    fn grades() {
        assert_eq!(t("*").grade(Grading::Operadic), 0);
        assert_eq!(t("c0()").grade(Grading::Operadic), -1);
        assert_eq!(t("b2(b2(*,*),*)").grade(Grading::Nodes), 2);
        assert_eq!(t("b2(b2(*,*),*)").grade(Grading::Leaves), 3);
    }

    #[test]
    fn symmetric_nodes_are_canonical() {
        assert_eq!(t("s2(*,s2(*,*))").as_str(), "s2(*,s2(*,*))");
        assert_eq!(t("s2(s2(*,*),*)").as_str(), "s2(*,s2(*,*))");
        assert_eq!(t("b2(b2(*,*),*)").as_str(), "b2(b2(*,*),*)");
        assert_ne!(t("b2(*,b2(*,*))"), t("b2(b2(*,*),*)"));
        // leaves go first within each colour block, slots keep their colours
        assert_eq!(
            t("m(m(*:a,*:b,*:a),g(*:a),*:a)").as_str(),
            "m(*:a,g(*:a),m(*:a,*:b,*:a))"
        );
        assert_eq!(t("m(*:a,g(*:a),*:a):a").as_str(), "m(*:a,g(*:a),*:a)");
    }

    #[test]
    fn parse_errors() {
        let table = Table::new();
        assert!(matches!(OpTree::parse("b2(*)", &table), Err(TreeError::Arity { .. })));
        assert!(matches!(OpTree::parse("zz(*)", &table), Err(TreeError::UnknownOp(_))));
        assert!(matches!(OpTree::parse("b2(*,*", &table), Err(TreeError::Unbalanced { .. })));
        assert!(matches!(OpTree::parse("g(*:b)", &table), Err(TreeError::ColorMismatch { .. })));
        assert!(matches!(OpTree::parse("g(*:a):a", &table), Err(TreeError::ColorMismatch { .. })));
        assert!(matches!(OpTree::parse("*:q", &table), Err(TreeError::UnknownColor(_))));
    }

    #[test]
    fn leaves_minus_one_is_sum_of_arity_excess() {
        for s in ["*", "c0()", "b2(c0(),*)", "s3(b2(*,*),*,b2(c0(),*))", "m(*:a,g(*:a),*:a)"] {
            let tree = t(s);
            fn excess(t: &OpTree) -> i64 {
                match t.op() {
                    None => 0,
                    Some(op) => op.arity() as i64 - 1 + t.children().iter().map(excess).sum::<i64>(),
                }
            }
            assert_eq!(tree.leaves() as i64 - 1, excess(&tree), "{s}");
        }
    }

    #[test]
    fn forests() {
        let table = Table::new();
        let f = OpForest::parse("b2(*,*).*", &table).unwrap();
        assert_eq!(f.to_string(), "*.b2(*,*)");
        assert_eq!(f.grade(Grading::Operadic), 1);
        assert!(!f.is_nodeless());
        assert!(OpForest::parse("*.*", &table).unwrap().is_nodeless());
        assert!(OpForest::parse("1", &table).unwrap().is_unit());
    }
}
