//! Named graph families and seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// Longest cycle `random_cactus` attaches.
pub const MAX_CACTUS_CYCLE: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

/// Star `K_{1,r}` with center 0 and leaves `1..=r`.
pub fn star(r: usize) -> Graph {
    Graph::new(r + 1, (1..=r).map(|v| (0, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Two adjacent centers 0 and 1; center 0 gets `a` leaves, center 1 gets `b`.
pub fn double_star(a: usize, b: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..a).map(|i| (0, 2 + i)));
    edges.extend((0..b).map(|i| (1, 2 + a + i)));
    Graph::new(2 + a + b, edges).unwrap()
}

/// Center 0 with `legs` paths of `leg_len` vertices each hanging off it.
pub fn spider(legs: usize, leg_len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..leg_len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(next, edges).unwrap()
}

/// Uniformly random labeled tree on `n` vertices, decoded from a random
/// Prüfer sequence in linear time.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "a tree needs at least one vertex");
    let mut rng = rng(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return path(n);
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

pub fn prufer_decode(n: usize, code: &[Vertex]) -> Graph {
    debug_assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::new(n, edges).unwrap()
}

/// Random connected cactus on `n` vertices. Starting from one vertex, each
/// step picks an existing vertex uniformly and attaches either a pendant
/// cycle (probability `cycle_bias`, length 3 to [`MAX_CACTUS_CYCLE`] as room
/// allows) or a pendant edge.
pub fn random_cactus(n: usize, cycle_bias: f64, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = rng(seed);
    random_cactus_with(n, cycle_bias.clamp(0.0, 1.0), &mut rng)
}

pub fn random_cactus_with<R: Rng>(n: usize, cycle_bias: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let anchor = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(cycle_bias) {
            let len = rng.gen_range(3..=MAX_CACTUS_CYCLE.min(room + 1));
            let mut prev = anchor;
            for _ in 1..len {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, anchor));
        } else {
            edges.push((anchor, count));
            count += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `extra`.
pub fn random_connected<R: Rng>(n: usize, extra: f64, rng: &mut R) -> Graph {
    let tree = random_tree_with(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}
