//! Hypergraphs, graphs and labelings, together with the checks and
//! structural transformations everything else is built on.
//!
//! Vertex indices are 0-based throughout; label values are positive
//! integers.

mod graph;
mod hypergraph;
pub(crate) use hypergraph::for_each_combination;
mod labeling;
mod transform;
mod verify;

pub use graph::Graph;
pub use hypergraph::Hypergraph;
pub use labeling::Labeling;
pub use transform::{
    closed_neighborhood_hypergraph, closed_neighborhoods, dual, injective_reduction,
    open_neighborhood_hypergraph, power_of_two_labeling, split_embed, Dual,
    NeighborhoodHypergraph, SplitEmbedding,
};
pub use verify::{
    closed_sums, edge_sums, first_collision, is_distinguishing, is_vertex_sum_distinguishing,
};
