//! Block (biconnected component) decomposition and the cactus test.

use crate::error::Result;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertices of the block.
    pub vertices: Vec<Vertex>,
    /// Sorted edges `(u, v)`, `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    /// A 2-connected block with as many edges as vertices is a cycle.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Blocks ordered by their edge lists.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

/// Hopcroft-Tarjan decomposition, iterative so deep paths do not overflow
/// the stack. A single isolated vertex forms one edgeless block.
pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    g.require_connected()?;
    let n = g.vertex_count();
    if n == 1 {
        return Ok(BlockDecomposition {
            blocks: vec![Block {
                vertices: vec![0],
                edges: Vec::new(),
            }],
            cut_vertices: Vec::new(),
        });
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut is_cut = vec![false; n];
    let mut root_children = 0usize;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks = Vec::new();
    let mut timer = 0;

    let root = 0;
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, pos) = *top;
        let nb = g.neighbors(v);
        if pos < nb.len() {
            top.1 += 1;
            let u = nb[pos];
            if u == parent[v] {
                continue;
            }
            if disc[u] == UNSEEN {
                edge_stack.push((v, u));
                parent[u] = v;
                disc[u] = timer;
                low[u] = timer;
                timer += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, 0));
            } else if disc[u] < disc[v] {
                edge_stack.push((v, u));
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            let p = parent[v];
            if p == UNSEEN {
                continue;
            }
            low[p] = low[p].min(low[v]);
            if low[v] >= disc[p] {
                if p != root {
                    is_cut[p] = true;
                }
                let mut edges = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    edges.push((e.0.min(e.1), e.0.max(e.1)));
                    if e == (p, v) {
                        break;
                    }
                }
                blocks.push(make_block(edges));
            }
        }
    }
    if root_children >= 2 {
        is_cut[root] = true;
    }
    blocks.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    })
}

fn make_block(mut edges: Vec<(Vertex, Vertex)>) -> Block {
    edges.sort_unstable();
    let mut vertices: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Block { vertices, edges }
}

/// True iff every block is a bridge or a cycle, i.e. every edge lies on at
/// most one cycle.
pub fn is_cactus(g: &Graph) -> Result<bool> {
    let dec = block_decomposition(g)?;
    Ok(dec
        .blocks
        .iter()
        .all(|b| b.edges.len() <= 1 || b.is_cycle()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::generate::{complete, cycle, path};

    #[test]
    fn path_blocks_are_bridges() {
        let dec = block_decomposition(&path(4)).unwrap();
        assert_eq!(dec.blocks.len(), 3);
        assert!(dec.blocks.iter().all(Block::is_bridge));
        assert_eq!(dec.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn cycle_is_one_block() {
        let dec = block_decomposition(&cycle(5)).unwrap();
        assert_eq!(dec.blocks.len(), 1);
        assert_eq!(dec.blocks[0].vertices, vec![0, 1, 2, 3, 4]);
        assert!(dec.cut_vertices.is_empty());
    }

    #[test]
    fn bowtie() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let dec = block_decomposition(&g).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(dec.cut_vertices, vec![2]);
        assert!(is_cactus(&g).unwrap());
    }

    #[test]
    fn cactus_examples() {
        assert!(is_cactus(&cycle(4)).unwrap());
        assert!(!is_cactus(&complete(4)).unwrap());
        assert!(is_cactus(&path(6)).unwrap());
        assert!(is_cactus(&Graph::empty(1)).unwrap());
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(block_decomposition(&g).unwrap_err(), Error::Disconnected);
        assert_eq!(is_cactus(&g).unwrap_err(), Error::Disconnected);
    }
}
