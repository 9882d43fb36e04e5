//! p2-trees, generating families and [1,2]-semiexcellent trees.
//!
//! A p2-tree is a nontrivial tree whose bipartition `X ∪ Y` has every vertex
//! of `X` (the p2-set) of degree at most two; `Y` is then an independent
//! [1,2]-set. A generating family splits a tree into p2-trees joined by
//! `X`-`X` edges, and the union of the `Y` sides is an independent [1,2]-set
//! of the whole tree.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::oracle::validate_set;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub x_side: VertexSet,
    pub y_side: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    pub bipartition: Bipartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingFamily {
    /// Ordered by smallest vertex.
    pub components: Vec<Component>,
    /// The `X`-`X` edges joining components, sorted.
    pub removed_edges: Vec<(Vertex, Vertex)>,
}

impl GeneratingFamily {
    /// Union of the `Y` sides.
    pub fn associated_set(&self) -> VertexSet {
        self.components
            .iter()
            .flat_map(|c| c.bipartition.y_side.iter())
            .collect()
    }

    /// Component index of every vertex of a graph on `n` vertices.
    pub fn component_index(&self, n: usize) -> Vec<usize> {
        let mut idx = vec![usize::MAX; n];
        for (i, c) in self.components.iter().enumerate() {
            for v in c.vertices.iter() {
                idx[v] = i;
            }
        }
        idx
    }

    /// Checks the family against tree `t`: components partition the vertices
    /// and induce p2-trees with `x_side` as p2-set, removed edges join `X`
    /// vertices of different components, and the `Y` union validates.
    pub fn check(&self, t: &Graph) -> std::result::Result<(), String> {
        let n = t.vertex_count();
        let idx = self.component_index(n);
        let total: usize = self.components.iter().map(|c| c.vertices.len()).sum();
        if total != n || idx.contains(&usize::MAX) {
            return Err("components do not partition the vertex set".into());
        }
        for (i, c) in self.components.iter().enumerate() {
            let b = &c.bipartition;
            if b.x_side.len() + b.y_side.len() != c.vertices.len()
                || !c
                    .vertices
                    .iter()
                    .all(|v| b.x_side.contains(v) ^ b.y_side.contains(v))
            {
                return Err(format!("component {i}: sides do not partition it"));
            }
            let (sub, map) = t.induced(c.vertices.as_slice());
            if !sub.is_tree() {
                return Err(format!("component {i} is not a tree"));
            }
            for &(a, b2) in sub.edges() {
                if b.x_side.contains(map[a]) == b.x_side.contains(map[b2]) {
                    return Err(format!(
                        "component {i}: edge {} {} within a side",
                        map[a], map[b2]
                    ));
                }
            }
            if sub.vertex_count() >= 2 {
                for (local, &v) in map.iter().enumerate() {
                    if b.x_side.contains(v) && sub.degree(local) > 2 {
                        return Err(format!("component {i}: p2-set vertex {v} has degree > 2"));
                    }
                }
            }
        }
        let mut kept = 0;
        for &(u, v) in t.edges() {
            if idx[u] == idx[v] {
                kept += 1;
                continue;
            }
            let x = |w: Vertex| self.components[idx[w]].bipartition.x_side.contains(w);
            if !(x(u) && x(v)) {
                return Err(format!("edge {u} {v} joins components but not through X"));
            }
            if !self.removed_edges.contains(&(u, v)) {
                return Err(format!("edge {u} {v} joins components but is not listed"));
            }
        }
        if kept + self.removed_edges.len() != t.edge_count()
            || self.removed_edges.len() + 1 != self.components.len()
        {
            return Err("removed edge count does not match component count".into());
        }
        let report = validate_set(t, &self.associated_set());
        if !report.is_valid() {
            return Err(format!(
                "union of Y sides is not an independent [1,2]-set: {report}"
            ));
        }
        Ok(())
    }
}

/// Two-colouring of a tree by BFS from vertex 0; `true` marks the side of 0.
fn two_colour(t: &Graph) -> Vec<bool> {
    let n = t.vertex_count();
    let mut colour = vec![false; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    colour[0] = true;
    while let Some(v) = queue.pop_front() {
        for &u in t.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                colour[u] = !colour[v];
                queue.push_back(u);
            }
        }
    }
    colour
}

/// The bipartition of `t` with a p2-set as `x_side`, if `t` is a p2-tree.
/// When both sides qualify the side of vertex 0 is reported as `x_side`.
pub fn is_p2_tree(t: &Graph) -> Result<Option<Bipartition>> {
    t.require_tree()?;
    if t.vertex_count() < 2 {
        return Err(Error::TooSmall(t.vertex_count(), 2));
    }
    let colour = two_colour(t);
    let side = |c: bool| -> VertexSet { t.vertices().filter(|&v| colour[v] == c).collect() };
    let low_degree = |c: bool| {
        t.vertices()
            .filter(|&v| colour[v] == c)
            .all(|v| t.degree(v) <= 2)
    };
    let x = if low_degree(true) {
        true
    } else if low_degree(false) {
        false
    } else {
        return Ok(None);
    };
    Ok(Some(Bipartition {
        x_side: side(x),
        y_side: side(!x),
    }))
}

/// A vertex with at least two leaf neighbors, lowest index first.
pub fn strong_support_vertex(t: &Graph) -> Option<Vertex> {
    t.vertices().find(|&v| t.leaf_neighbors(v).nth(1).is_some())
}

/// A neighbor `u` of `v` with two or more leaves in `N(u) \ {v}`. Such a `u`
/// certifies that no independent [1,2]-set contains `v`: those leaves would
/// all be in the set, and so would `v`, giving `u` three set neighbors.
pub fn blocking_neighbor(t: &Graph, v: Vertex) -> Option<Vertex> {
    t.neighbors(v)
        .iter()
        .copied()
        .find(|&u| t.leaf_neighbors(u).filter(|&w| w != v).nth(1).is_some())
}

/// Generating family of a tree with no strong support vertex, built by the
/// X/Y labelling from a leaf root. Where a vertex labelled `X` has several
/// non-leaf children and no leaf child, its lowest-index child becomes `Y`.
pub fn generating_family(t: &Graph) -> Result<GeneratingFamily> {
    t.require_tree()?;
    let root = t.vertices().find(|&v| t.degree(v) <= 1).unwrap();
    generating_family_from(t, root)
}

/// [`generating_family`] with the labelling rooted at the given leaf.
pub fn generating_family_from(t: &Graph, root: Vertex) -> Result<GeneratingFamily> {
    t.require_tree()?;
    let n = t.vertex_count();
    if n < 2 {
        return Err(Error::TooSmall(n, 2));
    }
    if let Some(s) = strong_support_vertex(t) {
        return Err(Error::StrongSupport(s));
    }
    t.check_vertex(root)?;
    if !t.is_leaf(root) {
        return Err(Error::NotALeaf(root));
    }
    let mut is_y = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let first = t.neighbors(root)[0];
    is_y[first] = true;
    parent[first] = root;
    let mut queue = VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        let children: Vec<Vertex> = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&c| c != parent[v])
            .collect();
        for &c in &children {
            parent[c] = v;
            queue.push_back(c);
        }
        if is_y[v] || children.is_empty() {
            continue;
        }
        let chosen = if children.len() == 1 {
            children[0]
        } else {
            children
                .iter()
                .copied()
                .find(|&c| t.is_leaf(c))
                .unwrap_or(children[0])
        };
        is_y[chosen] = true;
    }
    let removed: Vec<(Vertex, Vertex)> = t
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !is_y[u] && !is_y[v])
        .collect();
    Ok(family_from_labels(t, &is_y, removed))
}

/// The family obtained by deleting every edge with both ends outside `s`.
pub fn associated_family(t: &Graph, s: &VertexSet) -> Result<GeneratingFamily> {
    t.require_tree()?;
    s.check_over(t)?;
    let report = validate_set(t, s);
    if !report.is_valid() {
        return Err(Error::InvalidSet(report.to_string()));
    }
    Ok(family_of_set(t, s))
}

/// [`associated_family`] without the checks, for callers that validated `s`.
pub(crate) fn family_of_set(t: &Graph, s: &VertexSet) -> GeneratingFamily {
    let in_s = s.to_mask(t.vertex_count());
    let removed = t
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !in_s[u] && !in_s[v])
        .collect();
    family_from_labels(t, &in_s, removed)
}

fn family_from_labels(
    t: &Graph,
    is_y: &[bool],
    removed: Vec<(Vertex, Vertex)>,
) -> GeneratingFamily {
    let n = t.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in t.vertices() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for &u in t.neighbors(v) {
                if comp[u] == usize::MAX && (is_y[u] || is_y[v]) {
                    comp[u] = id;
                    members.push(u);
                }
            }
        }
        let vertices: VertexSet = members.iter().copied().collect();
        let bipartition = Bipartition {
            x_side: vertices.iter().filter(|&v| !is_y[v]).collect(),
            y_side: vertices.iter().filter(|&v| is_y[v]).collect(),
        };
        components.push(Component {
            vertices,
            bipartition,
        });
    }
    GeneratingFamily {
        components,
        removed_edges: removed,
    }
}

/// Every vertex lies in some independent [1,2]-set iff the tree is `P3` or
/// has no strong support vertex. `P1` and `P2` qualify directly.
pub fn is_semiexcellent(t: &Graph) -> Result<bool> {
    t.require_tree()?;
    Ok(t.vertex_count() <= 3 || strong_support_vertex(t).is_none())
}

/// An independent [1,2]-set of the semiexcellent tree `t` containing `x`,
/// built from a generating family.
///
/// If `x` is on a `Y` side the union of the `Y` sides already works.
/// Otherwise the `Y` side of the component `T_1` of `x` is replaced by
/// `(Y_1 \ N(x)) ∪ L(x) ∪ {x}`, with `L(x)` the leaves of `T_1` at distance
/// two from `x`. Each remaining conflict is a vertex `u` of `X_j` with three
/// set neighbors, two of them in `Y_j`; component `T_j` is then re-solved so
/// that it avoids `u` and one non-leaf `Y` neighbor `y` of it, leaving `u`
/// dominated once from inside `T_j`.
pub fn witness_containing(t: &Graph, x: Vertex) -> Result<VertexSet> {
    t.require_tree()?;
    t.check_vertex(x)?;
    let n = t.vertex_count();
    if n <= 2 {
        return Ok(std::iter::once(x).collect());
    }
    if n == 3 {
        let middle = t.vertices().find(|&v| t.degree(v) == 2).unwrap();
        return Ok(if x == middle {
            std::iter::once(middle).collect()
        } else {
            t.vertices().filter(|&v| v != middle).collect()
        });
    }
    if strong_support_vertex(t).is_some() {
        return Err(Error::NotSemiexcellent);
    }

    // The labelling may start from any leaf; the lowest-index leaf comes
    // first and later roots are only tried when a construction gets stuck.
    let mut last_err = None;
    for root in t.vertices().filter(|&v| t.is_leaf(v)) {
        let family = generating_family_from(t, root)?;
        match containing_from_family(t, &family, x) {
            Ok(s) => return Ok(s),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("a tree on four or more vertices has leaves"))
}

fn containing_from_family(t: &Graph, family: &GeneratingFamily, x: Vertex) -> Result<VertexSet> {
    let n = t.vertex_count();
    let comp = family.component_index(n);
    let mut in_s = family.associated_set().to_mask(n);
    if in_s[x] {
        return Ok(VertexSet::from_mask(&in_s));
    }

    let same = |a: Vertex, b: Vertex| comp[a] == comp[b];
    let comp_degree = |v: Vertex| t.neighbors(v).iter().filter(|&&u| same(u, v)).count();

    // S_x inside the component of x.
    for &y in t.neighbors(x).iter().filter(|&&y| same(x, y)) {
        in_s[y] = false;
        for &l in t.neighbors(y) {
            if l != x && same(l, y) && comp_degree(l) == 1 {
                in_s[l] = true;
            }
        }
    }
    in_s[x] = true;

    let mut repaired = vec![false; family.components.len()];
    repaired[comp[x]] = true;
    for _ in 0..family.components.len() {
        let over = t
            .vertices()
            .find(|&u| !in_s[u] && t.neighbors(u).iter().filter(|&&w| in_s[w]).count() > 2);
        let Some(u) = over else {
            break;
        };
        let j = comp[u];
        if repaired[j] {
            return Err(Error::Invariant(format!(
                "vertex {u} over-dominated in already repaired component {j}"
            )));
        }
        repaired[j] = true;
        let y = t
            .neighbors(u)
            .iter()
            .copied()
            .find(|&y| same(u, y) && in_s[y] && !t.is_leaf(y))
            .ok_or_else(|| {
                Error::Invariant(format!("vertex {u} has no non-leaf Y neighbor to give up"))
            })?;
        let component = &family.components[j];
        let replacement = avoid_pair(t, &comp, component, u, y)?;
        for v in component.vertices.iter() {
            in_s[v] = replacement.contains(v);
        }
    }

    let s = VertexSet::from_mask(&in_s);
    let report = validate_set(t, &s);
    if report.is_valid() {
        Ok(s)
    } else {
        Err(Error::Invariant(format!(
            "constructed set containing {x} is invalid: {report}"
        )))
    }
}

/// Independent [1,2]-set of the p2-tree component avoiding the adjacent
/// non-leaf pair `x ∈ X`, `y ∈ Y`, with `x` dominated exactly once. Leaves
/// are taken with respect to the component.
fn avoid_pair(
    t: &Graph,
    comp: &[usize],
    component: &Component,
    x: Vertex,
    y: Vertex,
) -> Result<VertexSet> {
    let id = comp[x];
    let local = |v: Vertex| {
        t.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| comp[u] == id)
    };
    let is_leaf = |v: Vertex| local(v).count() == 1;
    let mut s = component.bipartition.y_side.clone();
    s.remove(y);

    if let Some(x1) = local(y).find(|&w| w != x && is_leaf(w)) {
        s.insert(x1);
        return Ok(s);
    }
    let x1 = local(y)
        .find(|&w| w != x)
        .ok_or_else(|| Error::Invariant(format!("Y vertex {y} has no neighbor besides {x}")))?;
    let y1 = local(x1)
        .find(|&w| w != y)
        .ok_or_else(|| Error::Invariant(format!("X vertex {x1} has a single neighbor")))?;
    s.remove(y1);
    s.insert(x1);
    if !is_leaf(y1) {
        if let Some(x2) = local(y1).find(|&w| w != x1 && is_leaf(w)) {
            s.insert(x2);
        }
    }
    Ok(s)
}
