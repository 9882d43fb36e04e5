//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates independent sets by backtracking and checks
//! the definitions directly. Nothing in this module shares logic with the
//! tree dynamic program, which is what makes it usable as a reference.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::label::Label;
use crate::rooted::RootedTree;

pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    NotDominated,
    /// Outside the set with this many neighbors inside it.
    OverDominated(usize),
    /// In the set together with this neighbor.
    AdjacentInSet(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDominated => f.write_str("not-dominated"),
            Violation::OverDominated(k) => write!(f, "over-dominated({k})"),
            Violation::AdjacentInSet(u) => write!(f, "adjacency-inside-S({u})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<(Vertex, Violation)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|(v, r)| format!("{v}: {r}"))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

/// Checks that `s` is independent, dominating, and that no vertex outside
/// `s` has more than two neighbors in it.
pub fn validate_set(g: &Graph, s: &VertexSet) -> ValidationReport {
    let mask = s.to_mask(g.vertex_count());
    let mut violations = Vec::new();
    for v in g.vertices() {
        let inside = g.neighbors(v).iter().filter(|&&u| mask[u]);
        if mask[v] {
            if let Some(&u) = inside.clone().next() {
                violations.push((v, Violation::AdjacentInSet(u)));
            }
        } else {
            match inside.count() {
                0 => violations.push((v, Violation::NotDominated)),
                1 | 2 => {}
                k => violations.push((v, Violation::OverDominated(k))),
            }
        }
    }
    ValidationReport { violations }
}

/// Exhaustive solver with a vertex cap.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn decide(&self, g: &Graph) -> Result<bool> {
        self.check_cap(g.vertex_count())?;
        let mut found = false;
        Search::whole(g).run(&mut |_| {
            found = true;
            ControlFlow::Break(())
        });
        Ok(found)
    }

    pub fn min(&self, g: &Graph) -> Result<Option<usize>> {
        self.check_cap(g.vertex_count())?;
        let mut best: Option<usize> = None;
        Search::whole(g).run(&mut |mask| {
            let k = mask.iter().filter(|&&b| b).count();
            best = Some(best.map_or(k, |b| b.min(k)));
            ControlFlow::Continue(())
        });
        Ok(best)
    }

    /// Every independent [1,2]-set, ordered by size and then
    /// lexicographically.
    pub fn all_sets(&self, g: &Graph) -> Result<Vec<VertexSet>> {
        self.check_cap(g.vertex_count())?;
        let mut sets = Vec::new();
        Search::whole(g).run(&mut |mask| {
            sets.push(VertexSet::from_mask(mask));
            ControlFlow::Continue(())
        });
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(sets)
    }

    /// Achievable labels of `v` over all sets of type I for `v` in the
    /// subtree rooted at `v`, with the minimum size of a set reaching each.
    pub fn label_set(&self, t: &RootedTree<'_>, v: Vertex) -> Result<BTreeMap<Label, usize>> {
        let domain = t.subtree(v);
        self.check_cap(domain.len())?;
        if domain.len() < 2 {
            return Err(Error::TooSmall(domain.len(), 2));
        }
        let g = t.graph();
        let mut search = Search::new(g, &domain, Some(v));
        let in_domain = search.in_domain.clone();
        let mut table: BTreeMap<Label, usize> = BTreeMap::new();
        search.run(&mut |mask| {
            let label = type_one_label(g, &in_domain, mask, v);
            let k = mask.iter().filter(|&&b| b).count();
            table
                .entry(label)
                .and_modify(|c| *c = (*c).min(k))
                .or_insert(k);
            ControlFlow::Continue(())
        });
        Ok(table)
    }
}

pub fn oracle_decide(g: &Graph) -> Result<bool> {
    Oracle::default().decide(g)
}

pub fn oracle_min(g: &Graph) -> Result<Option<usize>> {
    Oracle::default().min(g)
}

pub fn oracle_all_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    Oracle::default().all_sets(g)
}

pub fn oracle_label_set(t: &RootedTree<'_>, v: Vertex) -> Result<BTreeMap<Label, usize>> {
    Oracle::default().label_set(t, v)
}

fn type_one_label(g: &Graph, in_domain: &[bool], mask: &[bool], v: Vertex) -> Label {
    if mask[v] {
        return Label::Zero;
    }
    let nbrs = g.neighbors(v).iter().copied().filter(|&u| in_domain[u]);
    match nbrs.clone().filter(|&u| mask[u]).count() {
        1 => Label::One,
        2 => Label::Two,
        0 => {
            let twice = nbrs.into_iter().any(|u| {
                g.neighbors(u)
                    .iter()
                    .filter(|&&w| in_domain[w] && mask[w])
                    .count()
                    == 2
            });
            if twice {
                Label::MinusTwo
            } else {
                Label::MinusOne
            }
        }
        k => unreachable!("type I sets dominate {v} at most twice, got {k}"),
    }
}

/// Backtracking over independent subsets of a vertex domain. A vertex of the
/// domain outside the set must have one or two neighbors in it, except the
/// `exempt` vertex which may have zero.
struct Search<'g> {
    g: &'g Graph,
    order: Vec<Vertex>,
    in_domain: Vec<bool>,
    /// Vertices whose closed neighborhood is fully decided at each position.
    settled_at: Vec<Vec<Vertex>>,
    exempt: Option<Vertex>,
    in_set: Vec<bool>,
    dom: Vec<u8>,
}

impl<'g> Search<'g> {
    fn whole(g: &'g Graph) -> Self {
        let all: Vec<Vertex> = g.vertices().collect();
        Self::new(g, &all, None)
    }

    fn new(g: &'g Graph, domain: &[Vertex], exempt: Option<Vertex>) -> Self {
        let n = g.vertex_count();
        let mut in_domain = vec![false; n];
        for &v in domain {
            in_domain[v] = true;
        }
        // BFS order over the domain keeps neighborhoods contiguous, so
        // undominated vertices are detected early.
        let mut order = Vec::with_capacity(domain.len());
        let mut seen = vec![false; n];
        for &start in domain {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut head = order.len();
            order.push(start);
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &u in g.neighbors(v) {
                    if in_domain[u] && !seen[u] {
                        seen[u] = true;
                        order.push(u);
                    }
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut settled_at = vec![Vec::new(); order.len()];
        for &v in &order {
            let last = g
                .neighbors(v)
                .iter()
                .filter(|&&u| in_domain[u])
                .map(|&u| pos[u])
                .fold(pos[v], usize::max);
            settled_at[last].push(v);
        }
        Self {
            g,
            order,
            in_domain,
            settled_at,
            exempt,
            in_set: vec![false; n],
            dom: vec![0; n],
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[bool]) -> ControlFlow<()>) {
        let _ = self.step(0, visit);
    }

    fn step(
        &mut self,
        i: usize,
        visit: &mut dyn FnMut(&[bool]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.order.len() {
            return visit(&self.in_set);
        }
        let v = self.order[i];
        let g = self.g;

        let can_join = g
            .neighbors(v)
            .iter()
            .all(|&u| !(self.in_domain[u] && self.in_set[u]));
        if can_join {
            self.in_set[v] = true;
            let mut ok = true;
            for &u in g.neighbors(v) {
                if self.in_domain[u] {
                    self.dom[u] += 1;
                    ok &= self.dom[u] <= 2;
                }
            }
            if ok && self.settled_ok(i) {
                self.step(i + 1, visit)?;
            }
            for &u in g.neighbors(v) {
                if self.in_domain[u] {
                    self.dom[u] -= 1;
                }
            }
            self.in_set[v] = false;
        }

        if self.settled_ok(i) {
            self.step(i + 1, visit)?;
        }
        ControlFlow::Continue(())
    }

    fn settled_ok(&self, i: usize) -> bool {
        self.settled_at[i]
            .iter()
            .all(|&w| self.in_set[w] || self.dom[w] > 0 || Some(w) == self.exempt)
    }
}
