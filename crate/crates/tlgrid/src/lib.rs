//! In-memory spatial indexing for rectangle (MBR) collections over the
//! unit square.
//!
//! The core structure is a regular grid whose tiles keep their contents
//! split into four secondary classes by where each rectangle's lower
//! corner falls relative to the tile. That second layer lets window
//! queries and intersection joins skip every piece of work that could
//! produce a duplicate, instead of generating duplicates and filtering
//! them afterwards, and caps the comparisons needed per examined
//! rectangle.
//!
//! The crate also ships the baselines the approach is measured against
//! (a single-layer grid and a replicating quad-tree, both using
//! reference-point deduplication), a PBSM-style join, synthetic data and
//! workload generators, and instrumentation counters the test suites
//! assert on.
//!
//! Batch query execution and tile-level join fan-out parallelize over
//! rayon when the default `parallel` feature is on; without it every
//! entry point falls back to the sequential path with the same results.
//!
//! ```
//! use tlgrid::grid::{GridConfig, SortMode, TwoLayerGrid};
//! use tlgrid::join::{join_identical_grids, JoinOpts};
//! use tlgrid::{window_query, Metrics, Rect, Window};
//!
//! // Coordinates live in the unit square; intervals are closed.
//! let rects = vec![
//!     Rect::new(0, 0.10, 0.30, 0.10, 0.30).unwrap(),
//!     Rect::new(1, 0.40, 0.60, 0.40, 0.60).unwrap(), // spans four tiles
//!     Rect::new(2, 0.75, 0.90, 0.75, 0.90).unwrap(),
//! ];
//! let grid = TwoLayerGrid::build(&rects, GridConfig::square(2).unwrap(), SortMode::None)?;
//!
//! // Window queries report each intersecting id exactly once, with no
//! // deduplication pass behind the scenes.
//! let mut m = Metrics::default();
//! let window = Window::new(0.45, 0.95, 0.45, 0.95).unwrap();
//! let mut ids = window_query(&grid, &window, &mut m);
//! ids.sort_unstable();
//! assert_eq!(ids, [1, 2]);
//!
//! // Joins decompose per tile into the nine class pairings that cannot
//! // repeat a result.
//! let other = TwoLayerGrid::build(
//!     &[Rect::new(10, 0.55, 0.65, 0.55, 0.65).unwrap()],
//!     GridConfig::square(2).unwrap(),
//!     SortMode::JoinReady,
//! )?;
//! let pairs = join_identical_grids(&grid, &other, JoinOpts::AllOpts, &mut m)?;
//! assert_eq!((pairs[0].r_id, pairs[0].s_id), (1, 10));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod baseline;
pub mod checksum;
pub mod dataio;
pub mod geom;
pub mod grid;
pub mod join;
pub mod metrics;
pub mod parallel;
pub mod range;

pub use geom::{intersects, reference_point, GeomError, Point, Rect, Window};
pub use grid::{
    classify, suggest_granularity, suggest_granularity_capped, ClassId, GridConfig, GridError,
    SortMode, SortOrder, Tile, TileExtent, TileRange, TwoLayerGrid, GRANULARITY_CAP,
};
pub use join::JoinPair;
pub use metrics::Metrics;
pub use range::{
    comparison_plan, relevant_classes, window_query, window_query_instrumented, ClassMask,
    ComparisonPlan, DimTest, TileQueryStats,
};
#[cfg(feature = "parallel")]
pub use range::window_query_par;
