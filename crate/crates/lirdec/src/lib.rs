//! Locally irregular edge decompositions of split graphs.
//!
//! A graph is *locally irregular* if no edge joins two vertices of the same
//! degree. A *locally irregular decomposition* partitions the edge set into
//! locally irregular subgraphs; viewed as an edge coloring, every color class
//! must be locally irregular. The *irregular chromatic index* of a graph is
//! the least number of parts in such a decomposition (some graphs admit
//! none).
//!
//! For split graphs this crate computes the irregular chromatic index
//! exactly and constructs a certifying edge coloring:
//!
//! * [`graph`] — simple graphs, edge colorings, conflict detection.
//! * [`split`] — split-graph recognition and the clique/stable-set frame in
//!   which the classification is stated.
//! * [`coloring`] — the two structured 2-colorings of complete graphs the
//!   constructions start from, plus alternating-cycle inversions.
//! * [`decompose`] — the classifier and the certificate constructions.
//! * [`oracle`] — an independent exhaustive solver, a structural checker,
//!   and instance generators used for cross-validation.

pub mod coloring;
pub mod decompose;
pub mod graph;
pub mod oracle;
pub mod split;

pub use coloring::{
    is_alternating_cycle, invert_cycle, normal_coloring, strange_coloring, CycleTemplate,
    VertexSequence,
};
pub use decompose::{classify, decompose, ChiResult, ChiStatus};
pub use graph::{
    conflicting_edges, is_locally_irregular, verify_decomposition, ConflictReport, EdgeColoring,
    Graph, BLUE, GREEN, RED,
};
pub use oracle::{
    check_single_repeat_structure, enumerate_split_graphs, gen_split_graph, oracle_chi,
    OracleResult, StructureReport,
};
pub use split::{split_partition, strip_isolated, SplitPartition, StrippedGraph};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a split graph")]
    NotSplit,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
