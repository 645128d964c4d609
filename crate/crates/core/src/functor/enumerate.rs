use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;

use super::spec::{dead_colors, FamilyDecl, FunctorSpec};
use super::FunctorError;
use crate::algebra::{inverse, Rational};
use crate::trees::{Color, Grading, OpDecl, OpTree, Symmetry};

/// Arity at which infinite families are cut off under node grading, where
/// nothing else bounds the arity.
pub const DEFAULT_ARITY_CEILING: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumEntry {
    pub tree: OpTree,
    pub aut_order: BigUint,
    pub grade: i64,
}

/// Canonical P-trees up to a grade bound, sorted by (grade, canonical string).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumResult {
    pub mode: Grading,
    pub bound: i64,
    pub entries: Vec<EnumEntry>,
    /// Set when infinite families had to be cut at this arity.
    pub arity_cap: Option<usize>,
}

impl EnumResult {
    fn from_items(mode: Grading, bound: i64, items: Vec<Item>, root: Option<&Color>, arity_cap: Option<usize>) -> Self {
        let mut entries: Vec<EnumEntry> = items
            .into_iter()
            .filter(|it| root.is_none_or(|c| it.tree.root_color() == c))
            .map(|it| EnumEntry {
                grade: it.tree.grade(mode),
                aut_order: it.tree.aut_order(),
                tree: it.tree,
            })
            .filter(|e| e.grade <= bound)
            .collect();
        entries.sort_by(|a, b| {
            a.grade
                .cmp(&b.grade)
                .then_with(|| a.tree.as_str().as_bytes().cmp(b.tree.as_str().as_bytes()))
        });
        EnumResult {
            mode,
            bound,
            entries,
            arity_cap,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn grade(&self, g: i64) -> impl Iterator<Item = &EnumEntry> {
        self.entries.iter().filter(move |e| e.grade == g)
    }

    /// Number of trees of each grade from `from` to the bound.
    pub fn counts(&self, from: i64) -> Vec<usize> {
        (from..=self.bound).map(|g| self.grade(g).count()).collect()
    }

    /// Σ 1/|Aut| over the trees of each grade from `from` to the bound.
    pub fn weighted_counts(&self, from: i64) -> Vec<Rational> {
        (from..=self.bound)
            .map(|g| self.grade(g).map(|e| inverse(&e.aut_order)).sum())
            .collect()
    }
}

#[derive(Clone)]
struct Item {
    tree: OpTree,
    nodes: usize,
    leaves: usize,
}

/// Trees of one colour, appended level by level so they stay sorted by
/// node count.
#[derive(Default)]
struct Pool {
    items: Vec<Item>,
    /// `starts[n]` is the index of the first item with at least `n` nodes.
    starts: Vec<usize>,
}

impl Pool {
    fn range(&self, nodes: usize) -> std::ops::Range<usize> {
        let lo = self.starts.get(nodes).copied().unwrap_or(self.items.len());
        let hi = self.starts.get(nodes + 1).copied().unwrap_or(self.items.len());
        lo..hi
    }
}

/// Slots of one op, grouped so that symmetric blocks are filled with
/// multisets and planar slots independently.
struct Group {
    color: Color,
    size: usize,
    multiset: bool,
}

fn groups(op: &OpDecl) -> Vec<Group> {
    match op.symmetry {
        Symmetry::Planar => op
            .inputs
            .iter()
            .map(|c| Group {
                color: c.clone(),
                size: 1,
                multiset: false,
            })
            .collect(),
        Symmetry::Symmetric => op
            .input_color_counts()
            .into_iter()
            .map(|(color, size)| Group {
                color,
                size,
                multiset: true,
            })
            .collect(),
    }
}

struct Search<'a> {
    pools: &'a BTreeMap<Color, Pool>,
    groups: &'a [Group],
    op: &'a Arc<OpDecl>,
    chosen: Vec<usize>,
    out: &'a mut BTreeMap<OpTree, Item>,
    max_leaves: usize,
}

impl Search<'_> {
    fn total_slots(&self) -> usize {
        self.groups.iter().map(|g| g.size).sum()
    }

    /// Fills slot `within` of group `group`; multiset groups pick
    /// non-decreasing indices from `start`.
    fn go(&mut self, group: usize, within: usize, start: usize, nodes_left: usize, leaves_left: usize) {
        if group == self.groups.len() {
            if nodes_left == 0 {
                self.emit(leaves_left);
            }
            return;
        }
        if within == self.groups[group].size {
            self.go(group + 1, 0, 0, nodes_left, leaves_left);
            return;
        }
        let pools = self.pools;
        let Some(pool) = pools.get(&self.groups[group].color) else {
            return;
        };
        let last = self.chosen.len() + 1 == self.total_slots();
        let mut lo = if self.groups[group].multiset { start } else { 0 };
        let exact = pool.range(nodes_left);
        if last {
            lo = lo.max(exact.start);
        }
        for i in lo..exact.end {
            let it = &pool.items[i];
            if it.leaves > leaves_left {
                continue;
            }
            self.chosen.push(i);
            self.go(group, within + 1, i, nodes_left - it.nodes, leaves_left - it.leaves);
            self.chosen.pop();
        }
    }

    fn emit(&mut self, leaves_left: usize) {
        let mut children = Vec::with_capacity(self.chosen.len());
        let mut k = 0;
        for g in self.groups {
            let pool = &self.pools[&g.color];
            for _ in 0..g.size {
                children.push(pool.items[self.chosen[k]].tree.clone());
                k += 1;
            }
        }
        let tree = OpTree::graft(self.op.clone(), children).expect("slot colours respected");
        let item = Item {
            nodes: tree.node_count(),
            leaves: self.max_leaves - leaves_left,
            tree,
        };
        self.out.insert(item.tree.clone(), item);
    }
}

/// Level-by-level construction by node count.
///
/// With `max_nodes = None` the loop stops once some window of levels
/// k+1 ..= A·k+1 (A the largest arity) is empty: following the largest child
/// from any bigger tree would land in that window.
fn build(ops: &[Arc<OpDecl>], colors: &[Color], max_leaves: usize, max_nodes: Option<usize>) -> Vec<Item> {
    build_marked(ops, &vec![false; ops.len()], colors, max_leaves >= 1, max_leaves, max_nodes)
}

/// As [`build`], but `marks` counts leaves plus nodes of the `marked` ops,
/// and is bounded by `max_marks`.
fn build_marked(
    ops: &[Arc<OpDecl>],
    marked: &[bool],
    colors: &[Color],
    allow_leaves: bool,
    max_marks: usize,
    max_nodes: Option<usize>,
) -> Vec<Item> {
    let mut pools: BTreeMap<Color, Pool> = colors.iter().map(|c| (c.clone(), Pool::default())).collect();
    let mut nonempty: Vec<bool> = Vec::new();
    let mut level0 = Vec::new();
    if allow_leaves && max_marks >= 1 {
        for c in colors {
            level0.push(Item {
                tree: OpTree::trivial(c.clone()),
                nodes: 0,
                leaves: 1,
            });
        }
    }
    let max_arity = ops.iter().map(|o| o.arity()).max().unwrap_or(0);
    let push_level = |pools: &mut BTreeMap<Color, Pool>, nonempty: &mut Vec<bool>, items: Vec<Item>| {
        for pool in pools.values_mut() {
            pool.starts.push(pool.items.len());
        }
        nonempty.push(!items.is_empty());
        for it in items {
            pools.entry(it.tree.root_color().clone()).or_default().items.push(it);
        }
    };
    push_level(&mut pools, &mut nonempty, level0);
    let group_table: Vec<Vec<Group>> = ops.iter().map(|o| groups(o)).collect();
    for n in 1.. {
        match max_nodes {
            Some(m) if n > m => break,
            None if window_closed(&nonempty, max_arity) => break,
            _ => {}
        }
        let mut found: BTreeMap<OpTree, Item> = BTreeMap::new();
        for ((op, g), &mark) in ops.iter().zip(&group_table).zip(marked) {
            let mark = usize::from(mark);
            if mark > max_marks {
                continue;
            }
            let mut search = Search {
                pools: &pools,
                groups: g,
                op,
                chosen: Vec::new(),
                out: &mut found,
                max_leaves: max_marks,
            };
            search.go(0, 0, 0, n - 1, max_marks - mark);
        }
        push_level(&mut pools, &mut nonempty, found.into_values().collect());
    }
    pools.into_values().flat_map(|p| p.items).collect()
}

fn window_closed(nonempty: &[bool], max_arity: usize) -> bool {
    let top = nonempty.len() - 1;
    (0..=top).any(|k| {
        let hi = max_arity * k + 1;
        hi <= top && (k + 1..=hi).all(|l| !nonempty[l]) && (max_arity > 0 || k >= 1)
    })
}

/// Leaf-graded enumeration is finite exactly when no unbounded family takes
/// leafless inputs and no cycle of ops can be pumped with leafless side
/// branches.
pub fn check_leaf_finite(spec: &FunctorSpec, max_leaves: usize) -> Result<(), FunctorError> {
    let explicit: Vec<Arc<OpDecl>> = spec
        .instantiate_with(|_| 0)
        .into_iter()
        .filter(|o| o.family.is_none())
        .collect();
    let dead = dead_colors(&explicit, spec);
    for fam in &spec.families {
        if fam.arity_max.is_none() && dead.contains(&Color::new(&fam.input_color)) {
            return Err(FunctorError::InfiniteGrade(format!(
                "family `{}` has unboundedly many arities over leafless inputs",
                fam.prefix
            )));
        }
    }
    let mut edges: BTreeMap<Color, BTreeSet<Color>> = BTreeMap::new();
    for op in &explicit {
        for (j, c) in op.inputs.iter().enumerate() {
            let others_dead = op
                .inputs
                .iter()
                .enumerate()
                .all(|(i, d)| i == j || dead.contains(d));
            if others_dead {
                edges.entry(op.output.clone()).or_default().insert(c.clone());
            }
        }
    }
    for fam in &spec.families {
        let input = Color::new(&fam.input_color);
        let unary = fam.contains(1);
        let wider = dead.contains(&input) && fam.arity_max.is_none_or(|m| m >= 1);
        if unary || wider {
            edges.entry(Color::new(&fam.output)).or_default().insert(input);
        }
    }
    if max_leaves == 0 {
        for targets in edges.values_mut() {
            targets.retain(|c| dead.contains(c));
        }
        edges.retain(|c, _| dead.contains(c));
    }
    if let Some(c) = find_cycle(&edges) {
        return Err(FunctorError::InfiniteGrade(format!(
            "colour `{c}` lies on a cycle of ops whose other inputs can be leafless"
        )));
    }
    Ok(())
}

fn find_cycle(edges: &BTreeMap<Color, BTreeSet<Color>>) -> Option<Color> {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn visit(c: &Color, edges: &BTreeMap<Color, BTreeSet<Color>>, state: &mut BTreeMap<Color, u8>) -> Option<Color> {
        match state.get(c) {
            Some(1) => return Some(c.clone()),
            Some(2) => return None,
            _ => {}
        }
        state.insert(c.clone(), 1);
        for d in edges.get(c).into_iter().flatten() {
            if let Some(hit) = visit(d, edges, state) {
                return Some(hit);
            }
        }
        state.insert(c.clone(), 2);
        None
    }
    let mut state = BTreeMap::new();
    edges.keys().find_map(|c| visit(c, edges, &mut state))
}

fn leaf_caps(spec: &FunctorSpec, max_leaves: usize) -> impl Fn(&FamilyDecl) -> usize + '_ {
    let explicit: Vec<Arc<OpDecl>> = spec
        .instantiate_with(|_| 0)
        .into_iter()
        .filter(|o| o.family.is_none())
        .collect();
    let dead = dead_colors(&explicit, spec);
    move |fam: &FamilyDecl| {
        if dead.contains(&Color::new(&fam.input_color)) {
            fam.arity_max.unwrap_or(0)
        } else {
            max_leaves
        }
    }
}

/// All P-trees with grade at most `bound`, optionally of one root colour.
pub fn enumerate_ptrees(
    spec: &FunctorSpec,
    mode: Grading,
    bound: i64,
    root: Option<&Color>,
) -> Result<EnumResult, FunctorError> {
    enumerate_ptrees_with(spec, mode, bound, root, DEFAULT_ARITY_CEILING)
}

pub fn enumerate_ptrees_with(
    spec: &FunctorSpec,
    mode: Grading,
    bound: i64,
    root: Option<&Color>,
    arity_ceiling: usize,
) -> Result<EnumResult, FunctorError> {
    let colors = spec.color_list();
    match mode {
        Grading::Leaves | Grading::Operadic => {
            let max_leaves = if mode == Grading::Leaves { bound } else { bound + 1 };
            if max_leaves < 0 {
                return Ok(EnumResult::from_items(mode, bound, Vec::new(), root, None));
            }
            let max_leaves = max_leaves as usize;
            check_leaf_finite(spec, max_leaves)?;
            let ops = spec.instantiate_with(leaf_caps(spec, max_leaves));
            let items = build(&ops, &colors, max_leaves, None);
            Ok(EnumResult::from_items(mode, bound, items, root, None))
        }
        Grading::Nodes => {
            if bound < 0 {
                return Ok(EnumResult::from_items(mode, bound, Vec::new(), root, None));
            }
            let truncated = spec.families.iter().any(|f| f.arity_max.is_none_or(|m| m > arity_ceiling));
            let ops = spec.instantiate_ops(arity_ceiling);
            let items = build(&ops, &colors, usize::MAX, Some(bound as usize));
            Ok(EnumResult::from_items(mode, bound, items, root, truncated.then_some(arity_ceiling)))
        }
    }
}

/// All trees without leaves and with at most `bound_nodes` nodes.
pub fn enumerate_dead(spec: &FunctorSpec, bound_nodes: usize) -> EnumResult {
    // Every slot of a dead tree holds at least one node.
    let ops = spec.instantiate_ops(bound_nodes.saturating_sub(1));
    let items = build(&ops, &spec.color_list(), 0, Some(bound_nodes));
    EnumResult::from_items(Grading::Nodes, bound_nodes as i64, items, None, None)
}

/// Leafless trees with at most `max_marked` nodes decorated by ops whose
/// name starts with `marked_prefix` and at most `max_other` other nodes, as
/// (tree, marked nodes, other nodes).
pub fn enumerate_dead_marked(
    spec: &FunctorSpec,
    marked_prefix: &str,
    max_marked: usize,
    max_other: usize,
) -> Vec<(OpTree, usize, usize)> {
    let total = max_marked + max_other;
    let ops = spec.instantiate_ops(total.saturating_sub(1));
    let marked: Vec<bool> = ops.iter().map(|o| o.name.starts_with(marked_prefix)).collect();
    let mut out: Vec<(OpTree, usize, usize)> = build_marked(&ops, &marked, &spec.color_list(), false, max_marked, Some(total))
        .into_iter()
        .map(|it| (it.nodes - it.leaves, it.leaves, it.tree))
        .filter(|(other, _, _)| *other <= max_other)
        .map(|(other, marks, tree)| (tree, marks, other))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// All P-trees with at most `max_leaves` leaves and `max_nodes` nodes, as
/// (tree, leaves, nodes).
pub fn enumerate_bigraded(spec: &FunctorSpec, max_leaves: usize, max_nodes: usize) -> Vec<(OpTree, usize, usize)> {
    let ops = spec.instantiate_ops((max_leaves + max_nodes).saturating_sub(1));
    let mut items: Vec<(OpTree, usize, usize)> = build(&ops, &spec.color_list(), max_leaves, Some(max_nodes))
        .into_iter()
        .map(|it| (it.tree, it.leaves, it.nodes))
        .collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
}

/// All P-trees with leaves + nodes at most `max_size` and at most
/// `max_nodes` nodes, as (tree, leaves, nodes).
pub fn enumerate_sized(spec: &FunctorSpec, max_size: usize, max_nodes: usize) -> Vec<(OpTree, usize, usize)> {
    let ops = spec.instantiate_ops(max_size.saturating_sub(1));
    let marked = vec![true; ops.len()];
    let mut items: Vec<(OpTree, usize, usize)> =
        build_marked(&ops, &marked, &spec.color_list(), true, max_size, Some(max_nodes))
            .into_iter()
            .map(|it| (it.tree.leaves(), it.nodes, it.tree))
            .map(|(leaves, nodes, tree)| (tree, leaves, nodes))
            .collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    items
}
