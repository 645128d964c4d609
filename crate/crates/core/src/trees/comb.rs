use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use super::parse::Cursor;
use super::TreeError;

/// An unordered rooted tree without open edges.
///
/// Children are kept sorted by their canonical strings (plain byte order), so
/// two trees are isomorphic exactly when their canonical strings agree.
#[derive(Clone)]
pub struct CombTree(Arc<CombNode>);

struct CombNode {
    children: Vec<CombTree>,
    repr: String,
    nodes: usize,
}

impl CombTree {
    /// The one-node tree.
    pub fn dot() -> Self {
        Self::from_children(Vec::new())
    }

    /// Grafts `children` onto a new root; the input order is irrelevant.
    pub fn from_children(mut children: Vec<CombTree>) -> Self {
        children.sort();
        let mut repr = String::with_capacity(2 + children.iter().map(|c| c.0.repr.len() + 1).sum::<usize>());
        repr.push('[');
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                repr.push(',');
            }
            repr.push_str(&c.0.repr);
        }
        repr.push(']');
        let nodes = 1 + children.iter().map(CombTree::node_count).sum::<usize>();
        CombTree(Arc::new(CombNode {
            children,
            repr,
            nodes,
        }))
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut cur = Cursor::new(text);
        let t = Self::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self, TreeError> {
        cur.expect(b'[', "`[`")?;
        let mut children = Vec::new();
        if !cur.eat(b']') {
            loop {
                children.push(Self::parse_from(cur)?);
                if cur.eat(b',') {
                    continue;
                }
                cur.expect(b']', "`,` or `]`")?;
                break;
            }
        }
        Ok(Self::from_children(children))
    }

    pub fn children(&self) -> &[CombTree] {
        &self.0.children
    }

    pub fn node_count(&self) -> usize {
        self.0.nodes
    }

    pub fn as_str(&self) -> &str {
        &self.0.repr
    }

    /// Number of root-preserving automorphisms:
    /// the product over classes of equal children of `m! * |Aut(c)|^m`.
    pub fn aut_order(&self) -> BigUint {
        let mut total = BigUint::one();
        let children = self.children();
        let mut i = 0;
        while i < children.len() {
            let mut j = i;
            while j < children.len() && children[j] == children[i] {
                j += 1;
            }
            let m = j - i;
            let child_aut = children[i].aut_order();
            for k in 1..=m {
                total *= BigUint::from(k);
                total *= &child_aut;
            }
            i = j;
        }
        total
    }

    /// All isomorphism classes of trees with exactly `n` nodes, sorted.
    pub fn all_with_nodes(n: usize) -> Vec<CombTree> {
        if n == 0 {
            return Vec::new();
        }
        let mut out: Vec<CombTree> = Forest::all_with_nodes(n - 1)
            .into_iter()
            .map(|f| f.graft())
            .collect();
        out.sort();
        out
    }
}

impl PartialEq for CombTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.repr == other.0.repr
    }
}

impl Eq for CombTree {}

impl PartialOrd for CombTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CombTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.repr.as_bytes().cmp(other.0.repr.as_bytes())
    }
}

impl Hash for CombTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.repr.hash(state);
    }
}

impl fmt::Display for CombTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.repr)
    }
}

impl fmt::Debug for CombTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CombTree({})", self.0.repr)
    }
}

/// A multiset of combinatorial trees; a monomial of the Connes–Kreimer
/// algebra. The empty forest is the unit and prints as `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Forest {
    trees: Vec<CombTree>,
}

impl Forest {
    pub fn unit() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn from_trees(mut trees: Vec<CombTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn single(tree: CombTree) -> Self {
        Forest { trees: vec![tree] }
    }

    pub fn trees(&self) -> &[CombTree] {
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

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(CombTree::node_count).sum()
    }

    /// Multiset union.
    pub fn mul(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest::from_trees(trees)
    }

    /// Grafts every tree of the forest onto a new root.
    pub fn graft(&self) -> CombTree {
        CombTree::from_children(self.trees.clone())
    }

    /// `|Aut|` of the forest as a disjoint union: equal trees may be swapped.
    pub fn aut_order(&self) -> BigUint {
        CombTree::from_children(self.trees.clone()).aut_order()
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut cur = Cursor::new(text);
        if cur.eat(b'1') {
            cur.finish()?;
            return Ok(Forest::unit());
        }
        let mut trees = vec![CombTree::parse_from(&mut cur)?];
        while cur.eat(b'.') {
            trees.push(CombTree::parse_from(&mut cur)?);
        }
        cur.finish()?;
        Ok(Forest::from_trees(trees))
    }

    /// All forests with exactly `n` nodes in total.
    pub fn all_with_nodes(n: usize) -> Vec<Forest> {
        // Candidate trees of every size up to n, then non-decreasing picks.
        let mut pool: Vec<CombTree> = Vec::new();
        for k in 1..=n {
            pool.extend(CombTree::all_with_nodes(k));
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn pick(
            pool: &[CombTree],
            start: usize,
            remaining: usize,
            current: &mut Vec<CombTree>,
            out: &mut Vec<Forest>,
        ) {
            if remaining == 0 {
                out.push(Forest::from_trees(current.clone()));
                return;
            }
            for i in start..pool.len() {
                let size = pool[i].node_count();
                if size <= remaining {
                    current.push(pool[i].clone());
                    pick(pool, i, remaining - size, current, out);
                    current.pop();
                }
            }
        }
        pick(&pool, 0, n, &mut current, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Forest {
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

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}
