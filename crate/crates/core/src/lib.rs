//! Independent [1,2]-sets: a set `S` of vertices that is independent,
//! dominating, and such that every vertex outside `S` has at most two
//! neighbors in `S`.
//!
//! * [`dp`] decides existence on trees in linear time and computes the
//!   minimum cardinality with a witness.
//! * [`structure`] covers p2-trees, generating families and
//!   semiexcellent trees.
//! * [`spanning`] handles general graphs through spanning trees, including
//!   the exact test for cactus graphs.
//! * [`oracle`] is the exhaustive reference everything is checked against.

pub mod blocks;
pub mod dp;
pub mod error;
pub mod generate;
pub mod graph;
pub mod label;
pub mod oracle;
pub mod rooted;
pub mod scaling;
pub mod spanning;
pub mod structure;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{parse_graph, Graph, Vertex, VertexSet};
pub use label::Label;
