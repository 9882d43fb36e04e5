//! Timing harness for the tree decision.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::dp;
use crate::error::{Error, Result};
use crate::generate::{path, random_tree};
use crate::graph::Graph;
use crate::sweep;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Path,
    RandomTree,
}

impl Shape {
    pub fn instance(self, n: usize, seed: u64) -> Graph {
        match self {
            Shape::Path => path(n),
            Shape::RandomTree => random_tree(n, seed ^ n as u64),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Shape::Path),
            "random-tree" => Ok(Shape::RandomTree),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown shape `{other}` (expected path or random-tree)"),
            }),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Path => "path",
            Shape::RandomTree => "random-tree",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub answer: bool,
    pub rule_applications: usize,
    /// Fastest of the timed repetitions.
    pub elapsed: Duration,
}

/// Times the decision on one instance per size.
pub fn bench(sizes: &[usize], shape: Shape, seed: u64) -> Result<Vec<BenchRow>> {
    bench_with(sizes, shape, seed, 3)
}

/// Instances are generated up front (in parallel when enabled); timing is
/// sequential so runs do not compete for cores.
pub fn bench_with(sizes: &[usize], shape: Shape, seed: u64, reps: usize) -> Result<Vec<BenchRow>> {
    let graphs = sweep::map(sizes, |&n| shape.instance(n, seed));
    let mut rows = Vec::with_capacity(sizes.len());
    for (&n, g) in sizes.iter().zip(&graphs) {
        let mut best = Duration::MAX;
        let mut outcome = None;
        for _ in 0..reps.max(1) {
            let start = Instant::now();
            let r = dp::decide_with_stats(g)?;
            best = best.min(start.elapsed());
            outcome = Some(r);
        }
        let (answer, stats) = outcome.unwrap();
        rows.push(BenchRow {
            n,
            answer,
            rule_applications: stats.rule_applications,
            elapsed: best,
        });
    }
    Ok(rows)
}
