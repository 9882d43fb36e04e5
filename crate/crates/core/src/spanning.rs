//! Spanning-tree certificates for general graphs.
//!
//! A graph with an independent [1,2]-set `S` has a spanning tree `T` on which
//! `S` is still an independent [1,2]-set and where every deleted edge `uv` is
//! either of type A (both ends outside `S`) or of type B (`u` outside `S` is a
//! leaf of its component in the family associated with `S`, and `v` is a
//! member of `S` in that same component). For cactus graphs the converse
//! holds, which gives an exact, if exponential, decision procedure.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::blocks::{block_decomposition, is_cactus};
use crate::error::{Error, Result};
use crate::generate::{random_tree_with, rng};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::{validate_set, Oracle, ValidationReport};
use crate::structure::{family_of_set, GeneratingFamily};
use crate::sweep;

/// Default cap on spanning trees examined by [`cactus_decide`].
pub const DEFAULT_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// Both endpoints are in the set.
    EndpointInSetPair,
    /// One endpoint is in the set but they lie in different components.
    DifferentComponents,
    /// The endpoint outside the set is not a leaf of its component.
    NotComponentLeaf,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidReason::EndpointInSetPair => "endpoint-in-S-pair",
            InvalidReason::DifferentComponents => "different-components",
            InvalidReason::NotComponentLeaf => "not-component-leaf",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    TypeA,
    /// `leaf` is the endpoint outside the set; `component` indexes the family.
    TypeB {
        component: usize,
        leaf: Vertex,
    },
    Invalid(InvalidReason),
}

impl EdgeClass {
    pub fn is_valid(&self) -> bool {
        !matches!(self, EdgeClass::Invalid(_))
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::TypeA => f.write_str("A"),
            EdgeClass::TypeB { component, leaf } => {
                write!(f, "B component={component} leaf={leaf}")
            }
            EdgeClass::Invalid(r) => write!(f, "invalid {r}"),
        }
    }
}

/// Tree, set and family an edge is classified against, with per-vertex
/// lookups precomputed.
pub struct EdgeContext<'a> {
    tree: &'a Graph,
    in_set: Vec<bool>,
    component: Vec<usize>,
}

impl<'a> EdgeContext<'a> {
    pub fn new(tree: &'a Graph, set: &VertexSet, family: &GeneratingFamily) -> Self {
        let n = tree.vertex_count();
        Self {
            tree,
            in_set: set.to_mask(n),
            component: family.component_index(n),
        }
    }

    fn component_degree(&self, v: Vertex) -> usize {
        let c = self.component[v];
        self.tree
            .neighbors(v)
            .iter()
            .filter(|&&u| self.component[u] == c)
            .count()
    }

    /// Classifies a non-tree edge.
    pub fn classify(&self, u: Vertex, v: Vertex) -> Result<EdgeClass> {
        self.tree.check_vertex(u)?;
        self.tree.check_vertex(v)?;
        if self.tree.has_edge(u, v) {
            return Err(Error::TreeEdge(u.min(v), u.max(v)));
        }
        let class = match (self.in_set[u], self.in_set[v]) {
            (false, false) => EdgeClass::TypeA,
            (true, true) => EdgeClass::Invalid(InvalidReason::EndpointInSetPair),
            (a_in, _) => {
                let (out, inside) = if a_in { (v, u) } else { (u, v) };
                if self.component[out] != self.component[inside] {
                    EdgeClass::Invalid(InvalidReason::DifferentComponents)
                } else if self.component_degree(out) != 1 {
                    EdgeClass::Invalid(InvalidReason::NotComponentLeaf)
                } else {
                    EdgeClass::TypeB {
                        component: self.component[out],
                        leaf: out,
                    }
                }
            }
        };
        Ok(class)
    }
}

pub fn classify_edge(
    tree: &Graph,
    set: &VertexSet,
    family: &GeneratingFamily,
    edge: (Vertex, Vertex),
) -> Result<EdgeClass> {
    EdgeContext::new(tree, set, family).classify(edge.0, edge.1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningCertificate {
    pub tree: Graph,
    pub set: VertexSet,
    /// Family associated with `set` in `tree`.
    pub family: GeneratingFamily,
    /// Every edge of the graph missing from `tree`, in edge order.
    pub edge_classes: Vec<((Vertex, Vertex), EdgeClass)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionFailure {
    NotSpanning(String),
    SetInvalid(ValidationReport),
    Edge {
        edge: (Vertex, Vertex),
        reason: InvalidReason,
    },
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionFailure::NotSpanning(why) => write!(f, "not a spanning tree: {why}"),
            ConditionFailure::SetInvalid(r) => {
                write!(f, "set is not an independent [1,2]-set of the tree: {r}")
            }
            ConditionFailure::Edge { edge, reason } => {
                write!(
                    f,
                    "edge {} {} is neither type A nor type B: {reason}",
                    edge.0, edge.1
                )
            }
        }
    }
}

/// Checks that `tree` spans `g`, that `s` is an independent [1,2]-set of
/// `tree`, and that every edge of `g` outside `tree` is of type A or B.
pub fn verify_condition(
    g: &Graph,
    tree: &Graph,
    s: &VertexSet,
) -> std::result::Result<SpanningCertificate, ConditionFailure> {
    let spanning = |why: &str| ConditionFailure::NotSpanning(why.to_string());
    if tree.vertex_count() != g.vertex_count() {
        return Err(spanning("vertex counts differ"));
    }
    if !tree.is_tree() {
        return Err(spanning("candidate is not a tree"));
    }
    if let Some(&(u, v)) = tree.edges().iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(ConditionFailure::NotSpanning(format!(
            "edge {u} {v} is not in the graph"
        )));
    }
    if s.check_over(tree).is_err() {
        return Err(spanning("set has a vertex outside the graph"));
    }
    let report = validate_set(tree, s);
    if !report.is_valid() {
        return Err(ConditionFailure::SetInvalid(report));
    }
    let family = family_of_set(tree, s);
    let ctx = EdgeContext::new(tree, s, &family);
    let mut edge_classes = Vec::new();
    for &(u, v) in g.edges() {
        if tree.has_edge(u, v) {
            continue;
        }
        let class = ctx
            .classify(u, v)
            .expect("non-tree edge of a spanning tree");
        if let EdgeClass::Invalid(reason) = class {
            return Err(ConditionFailure::Edge {
                edge: (u, v),
                reason,
            });
        }
        edge_classes.push(((u, v), class));
    }
    Ok(SpanningCertificate {
        tree: tree.clone(),
        set: s.clone(),
        family,
        edge_classes,
    })
}

/// Builds a spanning tree certifying the condition from an independent
/// [1,2]-set `s` of `g`.
///
/// The tree comes from [`remove_cycle_edges`]; if that gets stuck, from
/// [`forest_of_set_edges`]. The result is checked with [`verify_condition`].
pub fn construct_spanning_tree(g: &Graph, s: &VertexSet) -> Result<SpanningCertificate> {
    construct_with_method(g, s).map(|(cert, _)| cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CycleRemoval,
    SetEdgeForest,
}

pub fn construct_with_method(g: &Graph, s: &VertexSet) -> Result<(SpanningCertificate, Method)> {
    g.require_connected()?;
    s.check_over(g)?;
    let report = validate_set(g, s);
    if !report.is_valid() {
        return Err(Error::InvalidSet(report.to_string()));
    }
    let (tree, method) = match remove_cycle_edges(g, s)? {
        Some(t) => (t, Method::CycleRemoval),
        None => (forest_of_set_edges(g, s), Method::SetEdgeForest),
    };
    verify_condition(g, &tree, s)
        .map(|cert| (cert, method))
        .map_err(|f| Error::Invariant(format!("constructed spanning tree fails: {f}")))
}

/// Removes cycle edges one at a time until a tree remains, with `s` an
/// independent [1,2]-set of `g`.
///
/// While cycles remain, a shortest cycle through the lowest-index edge lying
/// on a cycle is taken (a shortest cycle through an edge is induced). If that
/// cycle has an edge with both ends outside `s` the lowest-index such edge is
/// deleted (case A). Otherwise every cycle edge has exactly one end in `s`
/// and the lowest-index edge not on an earlier case B cycle is deleted (case
/// B). If every edge of the cycle is on an earlier case B cycle, the cycle
/// through the next edge is tried; if none
/// works, `None` is returned.
pub fn remove_cycle_edges(g: &Graph, s: &VertexSet) -> Result<Option<Graph>> {
    let n = g.vertex_count();
    let in_set = s.to_mask(n);
    let edges = g.edges();
    let mut alive = vec![true; edges.len()];
    // Edges of earlier case B cycles other than the removed one must stay.
    let mut protected = vec![false; edges.len()];

    loop {
        let current = Graph::new(
            n,
            edges
                .iter()
                .zip(&alive)
                .filter(|(_, &a)| a)
                .map(|(&e, _)| e),
        )?;
        if current.edge_count() + 1 == n {
            return Ok(Some(current));
        }
        let dec = block_decomposition(&current)?;
        let mut on_cycle: Vec<(Vertex, Vertex)> = dec
            .blocks
            .iter()
            .filter(|b| b.edges.len() > 1)
            .flat_map(|b| b.edges.iter().copied())
            .collect();
        on_cycle.sort_unstable();

        let mut step = None;
        for &e in &on_cycle {
            let mut ids: Vec<usize> = shortest_cycle_through(&current, e)
                .iter()
                .map(|&(u, v)| g.edge_index(u, v).unwrap())
                .collect();
            ids.sort_unstable();
            let case_a = ids
                .iter()
                .copied()
                .find(|&i| !in_set[edges[i].0] && !in_set[edges[i].1]);
            if let Some(i) = case_a {
                step = Some((i, None));
                break;
            }
            if let Some(i) = ids.iter().copied().find(|&i| !protected[i]) {
                step = Some((i, Some(ids)));
                break;
            }
        }
        let Some((chosen, case_b_cycle)) = step else {
            return Ok(None);
        };
        if let Some(ids) = case_b_cycle {
            for i in ids {
                protected[i] = true;
            }
        }
        alive[chosen] = false;
    }
}

/// Spanning forest of the edges with exactly one end in `s`, joined into a
/// tree by edges with no end in `s`, both taken greedily in edge order.
///
/// Each piece of the forest spans a component of the one-end-in-`s` edges.
/// A dropped edge `uv` inside a piece, `u` outside `s`, leaves `u` with a
/// single neighbor in `s` within that piece, so `u` is a leaf of its family
/// component and `uv` is of type B. Every other dropped edge is of type A.
pub fn forest_of_set_edges(g: &Graph, s: &VertexSet) -> Graph {
    let n = g.vertex_count();
    let in_set = s.to_mask(n);
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut v: usize) -> usize {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    let (set_edges, other): (Vec<_>, Vec<_>) = g
        .edges()
        .iter()
        .partition(|&&(u, v)| in_set[u] != in_set[v]);
    let mut kept = Vec::with_capacity(n.saturating_sub(1));
    for &(u, v) in set_edges.iter().chain(&other) {
        let (a, b) = (find(&mut root, u), find(&mut root, v));
        if a != b {
            root[a] = b;
            kept.push((u, v));
        }
    }
    Graph::new(n, kept).expect("subgraph of a valid graph")
}

/// Edges of a shortest cycle through edge `(a, b)`.
fn shortest_cycle_through(g: &Graph, (a, b): (Vertex, Vertex)) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for &u in g.neighbors(v) {
            if prev[u] == usize::MAX && !(v == a && u == b) {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    assert!(prev[b] != usize::MAX, "edge {a} {b} is a bridge");
    let mut cycle = vec![(a, b)];
    let mut v = b;
    while v != a {
        let p = prev[v];
        cycle.push((p.min(v), p.max(v)));
        v = p;
    }
    cycle
}

/// Exact decision for cactus graphs: some spanning tree (one edge deleted
/// per cycle block) and some independent [1,2]-set of it satisfy
/// [`verify_condition`]. Fails with [`Error::BudgetExceeded`] when more than
/// `budget` spanning trees would be examined.
pub fn cactus_decide(g: &Graph, budget: u128) -> Result<bool> {
    cactus_decide_with(g, budget, Oracle::default())
}

pub fn cactus_decide_with(g: &Graph, budget: u128, oracle: Oracle) -> Result<bool> {
    if !is_cactus(g)? {
        return Err(Error::NotCactus);
    }
    if g.vertex_count() > oracle.cap {
        return Err(Error::CapExceeded {
            n: g.vertex_count(),
            cap: oracle.cap,
        });
    }
    let cycles: Vec<Vec<(Vertex, Vertex)>> = block_decomposition(g)?
        .blocks
        .into_iter()
        .filter(|b| b.is_cycle())
        .map(|b| b.edges)
        .collect();
    let needed = cycles
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let found = sweep::find_first(0..needed as usize, |mut code| {
        let mut removed = Vec::with_capacity(cycles.len());
        for c in &cycles {
            removed.push(c[code % c.len()]);
            code /= c.len();
        }
        let tree = g.without_edges(&removed);
        let sets = oracle.all_sets(&tree).ok()?;
        sets.iter()
            .any(|s| verify_condition(g, &tree, s).is_ok())
            .then_some(())
    });
    Ok(found.is_some())
}

/// A non-cactus graph with no independent [1,2]-set that nevertheless has a
/// spanning tree and set satisfying [`verify_condition`].
#[derive(Debug, Clone)]
pub struct NonSufficiencyWitness {
    pub graph: Graph,
    pub tree: Graph,
    pub set: VertexSet,
}

/// Random search for a [`NonSufficiencyWitness`] on at most `max_n`
/// vertices. Each attempt draws a tree and one of its independent
/// [1,2]-sets, then adds two or three non-edges of type A or B; attempts
/// whose result is a cactus or has an independent [1,2]-set are discarded.
/// The lowest successful attempt index wins, so the result is deterministic.
pub fn find_non_sufficiency_witness(
    max_n: usize,
    seed: u64,
    attempts: usize,
) -> Option<NonSufficiencyWitness> {
    let max_n = max_n.clamp(5, Oracle::default().cap);
    sweep::find_first(0..attempts, |i| {
        let mut rng = rng(seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(i as u64));
        let n = rng.gen_range(5..=max_n);
        let tree = random_tree_with(n, &mut rng);
        let sets = Oracle::default().all_sets(&tree).ok()?;
        let set = sets.choose(&mut rng)?.clone();
        let family = family_of_set(&tree, &set);
        let ctx = EdgeContext::new(&tree, &set, &family);
        let candidates: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !tree.has_edge(u, v))
            .filter(|&(u, v)| ctx.classify(u, v).is_ok_and(|c| c.is_valid()))
            .collect();
        if candidates.len() < 2 {
            return None;
        }
        let k = rng.gen_range(2..=candidates.len().min(3));
        let extra: Vec<_> = candidates.choose_multiple(&mut rng, k).copied().collect();
        let graph = tree.with_edges(&extra).ok()?;
        if is_cactus(&graph).ok()? || Oracle::default().decide(&graph).ok()? {
            return None;
        }
        debug_assert!(verify_condition(&graph, &tree, &set).is_ok());
        Some(NonSufficiencyWitness { graph, tree, set })
    })
}
