//! Linear-time dynamic program over rooted trees.
//!
//! Each internal vertex `v` carries a [`LabelTable`]: for every label of `v`
//! that some type I set of the subtree under `v` achieves, the minimum size of
//! such a set and the rule that produced it. Tables are built bottom-up with
//! three transfer rules:
//!
//! * [`star_table`] seeds a support vertex from its leaf children,
//! * [`extend_table`] seeds a vertex from its first non-leaf child,
//! * [`merge_tables`] folds in each further non-leaf child.
//!
//! The tree has an independent [1,2]-set iff no table becomes empty and the
//! root table holds one of the labels `0`, `1`, `2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::label::Label;
use crate::rooted::{root_tree, RootedTree};

/// How a table entry was obtained; enough to rebuild a witness top-down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Star seed: either the center joins the set or all leaf children do.
    Star { center_in_set: bool },
    /// Seed from a single child carrying `child`. The vertex joins the set iff
    /// the resulting label is `0`.
    Extend { child: Label },
    /// Child subtree with label `child` combined with the accumulated table
    /// entry `acc`.
    Merge { child: Label, acc: Label },
    /// Label `0` obtained by adding the vertex to a set labelled `-1`.
    Promoted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub cost: u32,
    pub rule: Rule,
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
pub struct LabelTable {
    entries: [Option<Entry>; 5],
}

impl LabelTable {
    pub fn get(&self, label: Label) -> Option<Entry> {
        self.entries[label.index()]
    }

    pub fn cost(&self, label: Label) -> Option<u32> {
        self.get(label).map(|e| e.cost)
    }

    pub fn contains(&self, label: Label) -> bool {
        self.entries[label.index()].is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.iter().all(Option::is_none)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        Label::ALL.into_iter().filter(|&l| self.contains(l))
    }

    /// Label to cost, dropping provenance.
    pub fn costs(&self) -> BTreeMap<Label, usize> {
        Label::ALL
            .into_iter()
            .filter_map(|l| self.cost(l).map(|c| (l, c as usize)))
            .collect()
    }

    /// Table with the given costs; every entry gets `rule`.
    pub fn from_costs(costs: &[(Label, u32)], rule: Rule) -> Self {
        let mut t = Self::default();
        for &(l, c) in costs {
            t.offer(l, c, rule);
        }
        t
    }

    /// Keeps the cheaper of the current entry and the offered one. Ties keep
    /// the current entry.
    fn offer(&mut self, label: Label, cost: u32, rule: Rule) {
        let slot = &mut self.entries[label.index()];
        if slot.is_none_or(|e| cost < e.cost) {
            *slot = Some(Entry { cost, rule });
        }
    }

    /// Adds label `0` at `cost(-1) + 1` when that is new or cheaper. A set
    /// labelled `-1` stays of type I when its vertex joins it.
    pub fn closed(&self) -> Self {
        let mut t = *self;
        if let Some(e) = self.get(Label::MinusOne) {
            t.offer(Label::Zero, e.cost + 1, Rule::Promoted);
        }
        t
    }

    pub fn is_closed(&self) -> bool {
        match (self.cost(Label::MinusOne), self.cost(Label::Zero)) {
            (Some(m), Some(z)) => z <= m + 1,
            (Some(_), None) => false,
            _ => true,
        }
    }

    pub fn restricted_to(&self, label: Label) -> Self {
        let mut t = Self::default();
        t.entries[label.index()] = self.entries[label.index()];
        t
    }

    fn without(&self, label: Label) -> Self {
        let mut t = *self;
        t.entries[label.index()] = None;
        t
    }

    /// Cheapest entry among the labels `0`, `1`, `2`, lowest label on ties.
    pub fn best_final(&self) -> Option<(Label, u32)> {
        Label::FINAL
            .into_iter()
            .filter_map(|l| self.cost(l).map(|c| (l, c)))
            .min_by_key(|&(l, c)| (c, l))
    }
}

impl fmt::Debug for LabelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                Label::ALL
                    .iter()
                    .filter_map(|&l| self.cost(l).map(|c| (l.value(), c))),
            )
            .finish()
    }
}

impl fmt::Display for LabelTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Label::ALL
            .iter()
            .filter_map(|&l| self.cost(l).map(|c| format!("{l}:{c}")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Table of the center of a star with `r` leaves.
pub fn star_table(r: usize) -> Result<LabelTable> {
    let center = |c| {
        (
            Label::Zero,
            c,
            Rule::Star {
                center_in_set: true,
            },
        )
    };
    let leaves = |l, c| {
        (
            l,
            c,
            Rule::Star {
                center_in_set: false,
            },
        )
    };
    let entries = match r {
        0 => return Err(Error::EmptyStar),
        1 => vec![center(1), leaves(Label::One, 1)],
        2 => vec![center(1), leaves(Label::Two, 2)],
        _ => vec![center(1)],
    };
    let mut t = LabelTable::default();
    for (l, c, rule) in entries {
        t.offer(l, c, rule);
    }
    Ok(t)
}

/// Table of a new vertex attached by one edge to the root of `child`.
pub fn extend_table(child: &LabelTable) -> Result<LabelTable> {
    if child.is_empty() {
        return Err(Error::EmptyTable);
    }
    let child = child.closed();
    let mut t = LabelTable::default();
    for l in child.labels() {
        let c = child.cost(l).unwrap();
        let rule = Rule::Extend { child: l };
        match l {
            Label::Two => t.offer(Label::MinusTwo, c, rule),
            Label::One => {
                t.offer(Label::MinusOne, c, rule);
                t.offer(Label::Zero, c + 1, rule);
            }
            Label::MinusTwo | Label::MinusOne => t.offer(Label::Zero, c + 1, rule),
            Label::Zero => t.offer(Label::One, c, rule),
        }
    }
    Ok(t)
}

/// Admissible `(child label, accumulated label) -> result label` triples,
/// sorted by the pair so the first cheapest pair wins ties.
const MERGE_RULES: [(Label, Label, Label); 14] = {
    use Label::*;
    [
        (MinusTwo, Zero, Zero),
        (MinusOne, Zero, Zero),
        (Zero, MinusTwo, One),
        (Zero, MinusOne, One),
        (Zero, One, Two),
        (One, MinusTwo, MinusTwo),
        (One, MinusOne, MinusOne),
        (One, Zero, Zero),
        (One, One, One),
        (One, Two, Two),
        (Two, MinusTwo, MinusTwo),
        (Two, MinusOne, MinusTwo),
        (Two, One, One),
        (Two, Two, Two),
    ]
};

/// Joins a child subtree (table `child`, rooted at `v`) to the partial
/// subtree of its parent `v'` (table `acc`) through the edge `v v'`. The
/// result describes `v'`; it may be empty.
pub fn merge_tables(child: &LabelTable, acc: &LabelTable) -> LabelTable {
    let child = child.closed();
    let acc = acc.closed();
    let mut t = LabelTable::default();
    for (a, b, out) in MERGE_RULES {
        if let (Some(ca), Some(cb)) = (child.cost(a), acc.cost(b)) {
            t.offer(out, ca + cb, Rule::Merge { child: a, acc: b });
        }
    }
    t
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    pub vertices: usize,
    /// Star, extend and merge applications.
    pub rule_applications: usize,
}

#[derive(Debug, Clone)]
pub struct DpResult {
    pub answer: bool,
    pub min_cardinality: Option<usize>,
    pub witness: Option<VertexSet>,
    /// Empty when some table emptied before the root was reached.
    pub root_table: LabelTable,
    pub stats: DpStats,
}

/// Runs the dynamic program and extracts a minimum witness.
pub fn run_dp(t: &RootedTree<'_>) -> DpResult {
    Engine::new(t, None, true).run()
}

/// Closed table of every internal vertex, indexed by vertex; leaves get an
/// empty table. Unlike [`run_dp`] this does not stop at the first empty
/// table, which then propagates upward.
pub fn vertex_tables(t: &RootedTree<'_>) -> Vec<LabelTable> {
    let mut engine = Engine::new(t, None, false);
    for &v in t.order() {
        let stuck = t
            .children(v)
            .any(|c| !t.is_leaf(c) && engine.table(c).is_empty());
        let table = if stuck {
            LabelTable::default()
        } else {
            engine.process(v)
        };
        engine.store(v, table);
    }
    let mut out = vec![LabelTable::default(); t.graph().vertex_count()];
    for &v in t.order() {
        out[v] = *engine.table(v);
    }
    out
}

/// [`run_dp`] on an unrooted tree, handling one- and two-vertex trees.
pub fn solve(g: &Graph) -> Result<DpResult> {
    // Larger inputs are checked while rooting.
    if g.vertex_count() <= 2 {
        g.require_tree()?;
    }
    if let Some(r) = tiny(g, None) {
        return Ok(r);
    }
    Ok(run_dp(&root_tree(g, None)?))
}

/// Decision only: no provenance is kept and no witness is built.
pub fn decide(g: &Graph) -> Result<bool> {
    decide_with_stats(g).map(|(a, _)| a)
}

pub fn decide_with_stats(g: &Graph) -> Result<(bool, DpStats)> {
    // Larger inputs are checked while rooting.
    if g.vertex_count() <= 2 {
        g.require_tree()?;
    }
    if let Some(r) = tiny(g, None) {
        return Ok((r.answer, r.stats));
    }
    let t = root_tree(g, None)?;
    let r = Engine::new(&t, None, false).run();
    Ok((r.answer, r.stats))
}

/// Minimum independent [1,2]-set containing `x`, if any.
pub fn min_witness_containing(g: &Graph, x: Vertex) -> Result<Option<VertexSet>> {
    // Larger inputs are checked while rooting.
    if g.vertex_count() <= 2 {
        g.require_tree()?;
    }
    g.check_vertex(x)?;
    if let Some(r) = tiny(g, Some(x)) {
        return Ok(r.witness);
    }
    let t = root_tree(g, None)?;
    Ok(Engine::new(&t, Some(x), true).run().witness)
}

/// Trees on one or two vertices, which have no non-leaf root.
fn tiny(g: &Graph, forced: Option<Vertex>) -> Option<DpResult> {
    let n = g.vertex_count();
    if n > 2 {
        return None;
    }
    let (root_table, rules) = if n == 1 {
        (
            LabelTable::from_costs(
                &[(Label::Zero, 1)],
                Rule::Star {
                    center_in_set: true,
                },
            ),
            0,
        )
    } else {
        (star_table(1).unwrap(), 1)
    };
    let pick = forced.unwrap_or(0);
    Some(DpResult {
        answer: true,
        min_cardinality: Some(1),
        witness: Some(std::iter::once(pick).collect()),
        root_table,
        stats: DpStats {
            vertices: n,
            rule_applications: rules,
        },
    })
}

struct Engine<'a, 'g> {
    tree: &'a RootedTree<'g>,
    forced: Option<Vertex>,
    /// Final tables of internal vertices in processing order; `slot` maps a
    /// vertex to its position.
    tables: Vec<LabelTable>,
    slot: Vec<u32>,
    /// Per-vertex step tables, kept when a witness is wanted. Tables are
    /// stored closed so provenance always resolves.
    trace: Option<Trace>,
    rules: usize,
}

#[derive(Default)]
struct Trace {
    first_step: Vec<usize>,
    steps: Vec<LabelTable>,
}

impl<'a, 'g> Engine<'a, 'g> {
    fn new(tree: &'a RootedTree<'g>, forced: Option<Vertex>, keep_trace: bool) -> Self {
        let n = tree.graph().vertex_count();
        Self {
            tree,
            forced,
            tables: Vec::with_capacity(tree.order().len()),
            slot: vec![u32::MAX; n],
            trace: keep_trace.then(|| Trace {
                first_step: vec![usize::MAX; n],
                steps: Vec::with_capacity(2 * n),
            }),
            rules: 0,
        }
    }

    fn table(&self, v: Vertex) -> &LabelTable {
        &self.tables[self.slot[v] as usize]
    }

    fn store(&mut self, v: Vertex, table: LabelTable) {
        self.slot[v] = self.tables.len() as u32;
        self.tables.push(table);
    }

    fn record(&mut self, table: LabelTable) {
        if let Some(trace) = &mut self.trace {
            trace.steps.push(table);
        }
    }

    fn process(&mut self, v: Vertex) -> LabelTable {
        let tree = self.tree;
        if let Some(trace) = &mut self.trace {
            trace.first_step[v] = trace.steps.len();
        }
        let leaf_count = tree.children(v).filter(|&c| tree.is_leaf(c)).count();
        let mut inner = tree.children(v).filter(|&c| !tree.is_leaf(c));

        let mut acc = if leaf_count > 0 {
            let mut t = star_table(leaf_count).expect("support vertex has leaves");
            if self
                .forced
                .is_some_and(|x| tree.is_leaf(x) && tree.parent(x) == Some(v))
            {
                t = t.without(Label::Zero);
            }
            t
        } else {
            let first = inner.next().expect("internal vertex has a child");
            extend_table(self.table(first)).expect("child tables are non-empty")
        }
        .closed();
        self.rules += 1;
        self.record(acc);

        for c in inner {
            if acc.is_empty() {
                break;
            }
            acc = merge_tables(self.table(c), &acc).closed();
            self.rules += 1;
            self.record(acc);
        }

        if self.forced == Some(v) {
            acc = acc.restricted_to(Label::Zero);
            if let Some(trace) = &mut self.trace {
                *trace.steps.last_mut().unwrap() = acc;
            }
        }
        acc
    }

    fn run(mut self) -> DpResult {
        let tree = self.tree;
        let n = tree.graph().vertex_count();
        let mut failed = false;
        for &v in tree.order() {
            let t = self.process(v);
            if t.is_empty() {
                failed = true;
                break;
            }
            self.store(v, t);
        }
        let stats = DpStats {
            vertices: n,
            rule_applications: self.rules,
        };
        let root_table = if failed {
            LabelTable::default()
        } else {
            *self.table(tree.root())
        };
        let best = root_table.best_final();
        let witness = match (&self.trace, best) {
            (Some(trace), Some((label, cost))) => {
                let s = reconstruct(tree, trace, label);
                debug_assert_eq!(s.len(), cost as usize);
                Some(s)
            }
            _ => None,
        };
        DpResult {
            answer: best.is_some(),
            min_cardinality: best.map(|(_, c)| c as usize),
            witness,
            root_table,
            stats,
        }
    }
}

/// Walks provenance from the root entry down to the leaves.
fn reconstruct(tree: &RootedTree<'_>, trace: &Trace, root_label: Label) -> VertexSet {
    let n = tree.graph().vertex_count();
    let mut in_set = vec![false; n];
    let mut stack = vec![(tree.root(), root_label)];
    let mut inner = Vec::new();
    while let Some((v, label)) = stack.pop() {
        inner.clear();
        inner.extend(tree.children(v).filter(|&c| !tree.is_leaf(c)));
        let has_leaves = tree.children(v).any(|c| tree.is_leaf(c));
        // With a star seed, step j merges inner[j - 1]; with an extend seed
        // inner[0] is consumed by the seed and step j merges inner[j].
        let offset = usize::from(!has_leaves);
        let first = trace.first_step[v];
        let last = first + inner.len() - offset;
        let mut j = last;
        let mut label = label;
        loop {
            let entry = trace.steps[j]
                .get(label)
                .expect("provenance points at a present entry");
            match entry.rule {
                Rule::Promoted => {
                    in_set[v] = true;
                    label = Label::MinusOne;
                }
                Rule::Merge { child, acc } => {
                    stack.push((inner[j - first - 1 + offset], child));
                    label = acc;
                    j -= 1;
                }
                Rule::Extend { child } => {
                    if label == Label::Zero {
                        in_set[v] = true;
                    }
                    stack.push((inner[0], child));
                    break;
                }
                Rule::Star { center_in_set } => {
                    if center_in_set {
                        in_set[v] = true;
                    } else {
                        for c in tree.children(v).filter(|&c| tree.is_leaf(c)) {
                            in_set[c] = true;
                        }
                    }
                    break;
                }
            }
        }
    }
    VertexSet::from_mask(&in_set)
}
