use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("input is not a tree")]
    NotATree,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a cactus")]
    NotCactus,
    #[error("root {0} is a leaf")]
    RootIsLeaf(Vertex),
    #[error("vertex {0} is not a leaf")]
    NotALeaf(Vertex),
    #[error("tree has {0} vertices, at least {1} required")]
    TooSmall(usize, usize),
    #[error("instance has {n} vertices, above the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("search needs {needed} candidate spanning trees, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("star with no leaves")]
    EmptyStar,
    #[error("label table is empty")]
    EmptyTable,
    #[error("vertex {0} is a strong support vertex")]
    StrongSupport(Vertex),
    #[error("tree is not [1,2]-semiexcellent")]
    NotSemiexcellent,
    #[error("not an independent [1,2]-set: {0}")]
    InvalidSet(String),
    #[error("edge {0} {1} belongs to the spanning tree")]
    TreeEdge(Vertex, Vertex),
    #[error("edge {0} {1} is not in the graph")]
    MissingEdge(Vertex, Vertex),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
