//! Instrumentation counters. These are part of the engine contracts, not
//! debug plumbing: several properties (comparison bounds per rectangle,
//! optimization orderings) are asserted directly on them.

/// Work counters for one query or join execution.
///
/// Counters only grow during an execution; callers reset or merge between
/// runs. A `Metrics` value is owned by a single execution context; parallel
/// engines keep one per task and merge afterwards.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Metrics {
    /// Individual coordinate comparisons evaluated (short-circuited
    /// branches are not charged).
    pub coordinate_comparisons: u64,
    /// Candidate tests: entries examined against a window, or (r,s) pairs
    /// whose second-dimension test was evaluated in a join.
    pub pairs_tested: u64,
    /// Class-to-class mini-joins actually executed (both sides non-empty).
    pub minijoins_executed: u64,
    /// Results emitted (ids or pairs).
    pub results_emitted: u64,
    /// Hits suppressed by reference-point deduplication.
    pub duplicates_eliminated: u64,
    /// Temporary per-tile class materializations performed by the
    /// grid-transformation join (zero for the on-the-fly variant).
    pub temp_tiles_materialized: u64,
}

impl Metrics {
    pub fn reset(&mut self) {
        *self = Metrics::default();
    }

    pub fn merge(&mut self, other: &Metrics) {
        self.coordinate_comparisons += other.coordinate_comparisons;
        self.pairs_tested += other.pairs_tested;
        self.minijoins_executed += other.minijoins_executed;
        self.results_emitted += other.results_emitted;
        self.duplicates_eliminated += other.duplicates_eliminated;
        self.temp_tiles_materialized += other.temp_tiles_materialized;
    }
}
