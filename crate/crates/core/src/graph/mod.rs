//! Structural analysis of dependency graphs.

mod connectivity;
mod cycles;
mod derived;
mod partition;

pub use connectivity::{
    bfs_levels, is_strongly_connected, loop_number, strongly_connected_components,
};
pub use cycles::{enumerate_cycles, DEFAULT_CYCLE_CAP};
pub use derived::{
    derived_graph, in_neighbors_k, in_neighbors_k_of_set, is_acyclic, longest_path_into,
    longest_path_length, out_neighbors_k, out_neighbors_k_of_set, reachable_from,
    topological_order, DerivedGraph,
};
pub use partition::{irreducible_components, Partition};

pub(crate) use connectivity::{gcd, require_strongly_connected};
