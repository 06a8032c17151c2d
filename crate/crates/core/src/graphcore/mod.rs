//! Multigraphs and the purely combinatorial operations on them: 2-core,
//! kernel decomposition, subcubic pruning, connected-subset enumeration,
//! expansion and spectral audits, and counting bounds.

mod counting;
mod expansion;
mod kernel;
mod multigraph;
mod spectral;
mod subsets;

pub use counting::{
    combinatorial_bounds, count_connected_partitions, count_spanning_trees, BoundKind, BoundReport,
    DEFAULT_EXACT_COUNT_CAP,
};
pub use expansion::{vertex_expansion_audit, ExpansionMode, ExpansionSpec, DEFAULT_EXACT_EXPANSION_CAP};
pub use kernel::{kernel_decompose, largest_component, prune_to_subcubic, two_core, KernelDecomposition, PruneOutcome};
pub use multigraph::{Multigraph, Subgraph};
pub use spectral::{
    boundary_exceeds_half_degree, edge_boundary_count, second_adjacency_eigenvalue,
    second_adjacency_eigenvalue_with_cap, SpectralReport, DEFAULT_ITERATION_CAP, DEFAULT_TOLERANCE,
};
pub use subsets::{connected_subset_counts, enumerate_connected_subsets, for_each_connected_subset};
