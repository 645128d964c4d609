// Shared fixtures for unit tests: a small op table and a brute-force
// generator of operadic trees by node count.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::trees::{Color, OpDecl, OpResolver, OpTree, Symmetry, TreeError};

pub(crate) struct Table(pub HashMap<String, Arc<OpDecl>>);

impl Table {
    pub(crate) fn new(ops: Vec<OpDecl>) -> Self {
        Table(ops.into_iter().map(|d| (d.name.clone(), Arc::new(d))).collect())
    }

    /// b2 planar binary, s2/s3 symmetric, c0 nullary, u1 unary, over `*`;
    /// f: a <- (a, b) planar and g: b <- (a, a) symmetric.
    pub(crate) fn standard() -> Self {
        let star = Color::default_color;
        let a = || Color::new("a");
        let b = || Color::new("b");
        Table::new(vec![
            OpDecl::new("b2", star(), vec![star(), star()], Symmetry::Planar),
            OpDecl::new("s2", star(), vec![star(), star()], Symmetry::Symmetric),
            OpDecl::new("s3", star(), vec![star(); 3], Symmetry::Symmetric),
            OpDecl::new("c0", star(), vec![], Symmetry::Planar),
            OpDecl::new("u1", star(), vec![star()], Symmetry::Planar),
            OpDecl::new("f", a(), vec![a(), b()], Symmetry::Planar),
            OpDecl::new("g", b(), vec![a(), a()], Symmetry::Symmetric),
            OpDecl::new("e0", b(), vec![], Symmetry::Planar),
        ])
    }

    pub(crate) fn op(&self, name: &str) -> Arc<OpDecl> {
        self.0[name].clone()
    }

    pub(crate) fn tree(&self, text: &str) -> OpTree {
        OpTree::parse(text, self).unwrap()
    }

    /// Every tree with exactly `nodes` nodes using only `names`, plus the
    /// trivial trees of `colors` when `nodes` is zero.
    pub(crate) fn trees_with_nodes(&self, names: &[&str], colors: &[&str], nodes: usize) -> Vec<OpTree> {
        let ops: Vec<Arc<OpDecl>> = names.iter().map(|n| self.op(n)).collect();
        let mut by_size: Vec<Vec<OpTree>> = vec![colors
            .iter()
            .map(|c| OpTree::trivial(Color::new(c)))
            .collect()];
        for n in 1..=nodes {
            let mut found = BTreeSet::new();
            for op in &ops {
                let mut slots = Vec::new();
                fill(&by_size, op, n - 1, &mut slots, &mut found);
            }
            by_size.push(found.into_iter().collect());
        }
        by_size.swap_remove(nodes)
    }
}

fn fill(
    by_size: &[Vec<OpTree>],
    op: &Arc<OpDecl>,
    budget: usize,
    slots: &mut Vec<OpTree>,
    out: &mut BTreeSet<OpTree>,
) {
    let k = slots.len();
    if k == op.arity() {
        if budget == 0 {
            out.insert(OpTree::graft(op.clone(), slots.clone()).unwrap());
        }
        return;
    }
    for (size, pool) in by_size.iter().enumerate().take(budget + 1) {
        for t in pool {
            if t.root_color() == &op.inputs[k] {
                slots.push(t.clone());
                fill(by_size, op, budget - size, slots, out);
                slots.pop();
            }
        }
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
