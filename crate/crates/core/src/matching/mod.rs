//! Matching engine: bipartite cardinality and weight matchings plus an exact
//! general-graph weighted matcher.

mod bipartite;
mod blossom;
mod graph;

pub use bipartite::{max_cardinality_bipartite, max_weight_bipartite};
pub use blossom::max_weight_general;
pub use graph::{Edge, Graph, Matching, Side, Weight};
