//! Unfriendly partitions at finite scale. A partition of a graph's
//! vertices into two sides is unfriendly when every vertex has at least as
//! many neighbours on the other side as on its own. This crate finitizes
//! the infinite version of that theory around a single knob, the infinity
//! threshold t: "infinitely many" becomes "at least t" everywhere it
//! appears, from degrees through exemptions to per-vertex conditions.
//!
//! The pieces:
//!
//! - [`Graph`] and [`ConditionedGraph`]: immutable graphs, optionally
//!   decorated with per-vertex phantom neighbour counts (kappa on side 0,
//!   lambda on side 1) that may be infinite.
//! - [`check`]: the exact and threshold-relaxed checkers, the potential
//!   function, and per-vertex flip deltas.
//! - [`solve`]: local search (guaranteed exact on finite conditions),
//!   greedy extension, layered settling, and the brute-force oracle.
//! - [`decompose`]: the peeled dense core, the staged sparse/anchored
//!   split, and the edge sparsifier.
//! - [`reduce`]: condition finitization and the three-copy gadget that
//!   compiles finite conditions into a plain graph.

pub mod cardinal;
pub mod check;
pub mod conditioned;
pub mod decompose;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod partition;
pub mod reduce;
pub mod solve;

#[cfg(test)]
pub(crate) mod testutil;

pub use cardinal::{ExtendedCardinal, Fin, Infinite};
pub use check::{
    Violation, ViolationReport, check_threshold_unfriendly, check_unfriendly, flip_delta,
    potential, sides_at,
};
pub use conditioned::{ConditionedGraph, VertexConditions, disjoint_union, disjoint_union_with};
pub use decompose::{
    Decomposition, Sparsified, Stage, count_valid_splits, finite_degree_set, sparsify, t_core,
    v1_v2_decompose,
};
pub use error::{Error, Result};
pub use families::{decorate_conditions, gnp, min_degree, star_bipartite};
pub use graph::{Graph, VertexId};
pub use io::{
    FORMAT_VERSION, InstanceFile, PartitionFile, emit_dot, emit_gadget_dot, emit_instance,
    emit_partition, parse_instance, parse_partition,
};
pub use partition::{PartialPartition, Partition, Side};
pub use reduce::{
    GadgetGraph, GadgetRole, GadgetSizing, LedgerEntry, Recovered, build_gadget, find_transfer_gap,
    finitize_conditions, gadget_sizing, recover_partition,
};
pub use solve::{
    BRUTE_FORCE_CAP, BruteForceResult, InitialAssignment, SolveTrace, SolverConfig, StageKind,
    StageRecord, Strategy, absorb_boundary_conditions, closure_set, solve_brute_force,
    solve_greedy_extend, solve_layered, solve_local_search, solve_with_restarts,
};
