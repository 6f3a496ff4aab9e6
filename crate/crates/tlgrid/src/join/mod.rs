//! Duplicate-free spatial intersection joins over two-layer partitioned
//! inputs, plus the PBSM baseline.

mod minijoin;
mod reduced;
mod strategies;
mod sweep;

pub use minijoin::{
    mini_join, mini_join_into, tile_join, JoinOpts, MiniJoinKind, EVALUATED_KINDS, SKIPPED_KINDS,
};
pub use reduced::{
    build_temp_reduced, reduced_join, ReducedBEntry, ReducedDEntry, ReducedTile,
    ReducedTwoLayerGrid,
};
#[cfg(feature = "parallel")]
pub use strategies::join_identical_grids_par;
pub use strategies::{
    join_identical_grids, pbsm_one_layer_join, probe_join, reindex_cost, rewindow_classes,
    transform_join, JoinError, ProbeStrategy, ReindexCost, TransformVariant,
};
pub use sweep::{plane_sweep, reduced_plane_sweep, reduced_plane_sweep_batch, YTestMode};

/// An intersecting (r, s) pair of object ids, ordered R input first.
/// Joins are over ordered pairs R x S: a self join reports (r, r), and
/// (r, s) is distinct from (s, r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JoinPair {
    pub r_id: u64,
    pub s_id: u64,
}
