use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const NONE: u32 = u32::MAX;

/// A tree with a chosen non-leaf root and a bottom-up order of its internal
/// vertices.
#[derive(Debug, Clone)]
pub struct RootedTree<'g> {
    graph: &'g Graph,
    root: Vertex,
    /// `NONE` at the root.
    parent: Vec<u32>,
    order: Vec<Vertex>,
}

impl<'g> RootedTree<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        let p = self.parent[v];
        (p != NONE).then_some(p as Vertex)
    }

    /// Internal vertices, every internal descendant of `v` before `v`. The
    /// root comes last.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn children(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let p = self.parent[v] as Vertex;
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| u != p)
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.graph.is_leaf(v)
    }

    /// Vertices of the subtree hanging from `v`, `v` first, in preorder.
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            let mut kids: Vec<Vertex> = self.children(u).collect();
            kids.reverse();
            stack.extend(kids);
        }
        out
    }
}

/// Roots a tree with at least three vertices. Without an explicit root the
/// lowest-index internal vertex is used. The order is reverse breadth-first,
/// children visited in increasing index order.
///
/// The tree test is folded into the traversal: `n - 1` edges and every
/// vertex reached.
pub fn root_tree(tree: &Graph, root: Option<Vertex>) -> Result<RootedTree<'_>> {
    let n = tree.vertex_count();
    assert!(n < NONE as usize, "vertex count exceeds 32-bit identifiers");
    if n == 0 || tree.edge_count() + 1 != n {
        return Err(Error::NotATree);
    }
    if n < 3 {
        return Err(Error::TooSmall(n, 3));
    }
    let root = match root {
        Some(r) => {
            tree.check_vertex(r)?;
            if tree.degree(r) < 2 {
                return Err(Error::RootIsLeaf(r));
            }
            r
        }
        // With n - 1 edges and n >= 3 some degree is at least two.
        None => tree.vertices().find(|&v| tree.degree(v) >= 2).unwrap(),
    };

    let mut parent = vec![NONE; n];
    parent[root] = root as u32;
    let mut bfs = Vec::with_capacity(n);
    bfs.push(root);
    let mut head = 0;
    while let Some(&v) = bfs.get(head) {
        head += 1;
        for &u in tree.neighbors(v) {
            if parent[u] == NONE {
                parent[u] = v as u32;
                bfs.push(u);
            }
        }
    }
    if bfs.len() != n {
        return Err(Error::NotATree);
    }
    parent[root] = NONE;
    bfs.retain(|&v| tree.degree(v) >= 2);
    bfs.reverse();
    let order = bfs;
    Ok(RootedTree {
        graph: tree,
        root,
        parent,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{path, star};

    #[test]
    fn path4_rooted_at_one() {
        let g = path(4);
        let t = root_tree(&g, Some(1)).unwrap();
        assert_eq!(t.order(), &[2, 1]);
        assert_eq!(t.parent(0), Some(1));
        assert_eq!(t.parent(1), None);
    }

    #[test]
    fn star_has_single_internal_vertex() {
        let g = star(3);
        let t = root_tree(&g, None).unwrap();
        assert_eq!(t.order(), &[0]);
    }

    #[test]
    fn path5_rooted_in_the_middle() {
        let g = path(5);
        let t = root_tree(&g, Some(2)).unwrap();
        assert_eq!(t.order(), &[3, 1, 2]);
        assert_eq!(t.subtree(3), vec![3, 4]);
    }

    #[test]
    fn default_root_is_lowest_internal() {
        let g = path(4);
        assert_eq!(root_tree(&g, None).unwrap().root(), 1);
    }

    #[test]
    fn rejections() {
        let g = path(4);
        assert_eq!(root_tree(&g, Some(0)).unwrap_err(), Error::RootIsLeaf(0));
        assert_eq!(
            root_tree(&path(2), None).unwrap_err(),
            Error::TooSmall(2, 3)
        );
        let c4 = crate::generate::cycle(4);
        assert_eq!(root_tree(&c4, None).unwrap_err(), Error::NotATree);
    }
}
