//! Batch evaluation over independent instances.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it every helper runs in order. Results are returned
//! in input order either way, and `find_first` always reports the match with
//! the lowest index, so output never depends on scheduling.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dp::{self, DpResult};
use crate::error::Result;
use crate::graph::Graph;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    map_seq(items, f)
}

pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    range.map(f).collect()
}

/// First index in `range` (lowest, not fastest) for which `f` yields a value.
#[cfg(feature = "parallel")]
pub fn find_first<R, F>(range: Range<usize>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    range.into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<R, F>(range: Range<usize>, f: F) -> Option<R>
where
    F: Fn(usize) -> Option<R>,
{
    range.into_iter().find_map(f)
}

/// Tree decision for a batch of graphs.
pub fn decide_all(graphs: &[Graph]) -> Vec<Result<bool>> {
    map(graphs, dp::decide)
}

pub fn decide_all_seq(graphs: &[Graph]) -> Vec<Result<bool>> {
    map_seq(graphs, dp::decide)
}

/// Full dynamic program with witnesses for a batch of trees.
pub fn solve_all(graphs: &[Graph]) -> Vec<Result<DpResult>> {
    map(graphs, dp::solve)
}

pub fn solve_all_seq(graphs: &[Graph]) -> Vec<Result<DpResult>> {
    map_seq(graphs, dp::solve)
}
