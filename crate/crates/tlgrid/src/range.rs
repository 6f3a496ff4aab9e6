//! Window-query evaluation over the two-layer grid.
//!
//! Per intersecting tile the engine decides, from tile indices alone,
//! (a) which secondary classes can contribute results that no earlier tile
//! already reported, and (b) which coordinate comparisons are still
//! needed. Tiles interior to the window report their class-A contents
//! without a single comparison; border tiles need at most one comparison
//! per dimension whenever the window spans more than one tile in each
//! dimension. No deduplication pass exists anywhere in this path.

use crate::geom::{Rect, Window};
use crate::grid::{ClassId, TileRange, TwoLayerGrid};
use crate::metrics::Metrics;

/// Classes to examine in one tile. Class A is never pruned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassMask {
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl ClassMask {
    pub fn allows(&self, c: ClassId) -> bool {
        match c {
            ClassId::A => true,
            ClassId::B => self.b,
            ClassId::C => self.c,
            ClassId::D => self.d,
        }
    }
}

/// Classes that cannot produce duplicates in tile (i, j): a window
/// starting before the tile in x disqualifies C and D, starting before it
/// in y disqualifies B and D. "Starts before" is decided on tile indices,
/// never on floating extents.
pub fn relevant_classes(tile: (u32, u32), query_range: &TileRange) -> ClassMask {
    debug_assert!(query_range.contains(tile.0, tile.1));
    let starts_before_x = tile.0 > query_range.i0;
    let starts_before_y = tile.1 > query_range.j0;
    ClassMask {
        b: !starts_before_y,
        c: !starts_before_x,
        d: !starts_before_x && !starts_before_y,
    }
}

/// Per-dimension test required for rectangles of one tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimTest {
    /// Window covers the tile in this dimension: no comparison.
    None,
    /// Window starts in this tile and ends after it: test `r.d_u >= W.d_l`.
    StartOnly,
    /// Window ends in this tile and started before it: test `r.d_l <= W.d_u`.
    EndOnly,
    /// Window starts and ends within this tile: full interval test.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonPlan {
    pub x: DimTest,
    pub y: DimTest,
}

impl ComparisonPlan {
    /// Upper bound on comparisons charged per rectangle under this plan.
    pub fn max_comparisons_per_entry(&self) -> u64 {
        let per_dim = |t: DimTest| match t {
            DimTest::None => 0,
            DimTest::StartOnly | DimTest::EndOnly => 1,
            DimTest::Both => 2,
        };
        per_dim(self.x) + per_dim(self.y)
    }

    pub fn is_interior(&self) -> bool {
        self.x == DimTest::None && self.y == DimTest::None
    }
}

/// Comparison plan for tile (i, j) within `query_range`.
pub fn comparison_plan(i: u32, j: u32, query_range: &TileRange) -> ComparisonPlan {
    let per_dim = |idx: u32, lo: u32, hi: u32| match (idx == lo, idx == hi) {
        (false, false) => DimTest::None,
        (true, false) => DimTest::StartOnly,
        (false, true) => DimTest::EndOnly,
        (true, true) => DimTest::Both,
    };
    ComparisonPlan {
        x: per_dim(i, query_range.i0, query_range.i1),
        y: per_dim(j, query_range.j0, query_range.j1),
    }
}

fn dim_test(test: DimTest, rl: f64, ru: f64, wl: f64, wu: f64, m: &mut Metrics) -> bool {
    match test {
        DimTest::None => true,
        DimTest::StartOnly => {
            m.coordinate_comparisons += 1;
            ru >= wl
        }
        DimTest::EndOnly => {
            m.coordinate_comparisons += 1;
            rl <= wu
        }
        DimTest::Both => {
            m.coordinate_comparisons += 1;
            if ru < wl {
                return false;
            }
            m.coordinate_comparisons += 1;
            rl <= wu
        }
    }
}

/// Applies a plan's tests to one rectangle, charging the evaluated
/// comparisons. Shared with the one-layer baseline.
pub(crate) fn plan_test_rect(r: &Rect, w: &Window, plan: &ComparisonPlan, m: &mut Metrics) -> bool {
    dim_test(plan.x, r.xl, r.xu, w.xl, w.xu, m) && dim_test(plan.y, r.yl, r.yu, w.yl, w.yu, m)
}

/// Per-tile instrumentation from [`window_query_instrumented`].
#[derive(Debug, Clone)]
pub struct TileQueryStats {
    pub tile: (u32, u32),
    pub plan: ComparisonPlan,
    pub entries_examined: u64,
    pub comparisons: u64,
    pub emitted: u64,
}

fn query_tile(
    g: &TwoLayerGrid,
    w: &Window,
    range: &TileRange,
    i: u32,
    j: u32,
    m: &mut Metrics,
    out: &mut Vec<u64>,
) -> (ComparisonPlan, u64) {
    let plan = comparison_plan(i, j, range);
    let mask = relevant_classes((i, j), range);
    let mut examined = 0;
    if let Some(tile) = g.tile(i, j) {
        if plan.is_interior() {
            // Interior tiles are covered by the window in both dimensions
            // and pruned down to class A: report wholesale.
            let a = tile.class(ClassId::A);
            examined = a.len() as u64;
            m.pairs_tested += examined;
            m.results_emitted += examined;
            out.extend(a.iter().map(|r| r.id));
            return (plan, examined);
        }
        for c in ClassId::ALL {
            if !mask.allows(c) {
                continue;
            }
            for r in tile.class(c) {
                examined += 1;
                m.pairs_tested += 1;
                if plan_test_rect(r, w, &plan, m) {
                    m.results_emitted += 1;
                    out.push(r.id);
                }
            }
        }
    }
    (plan, examined)
}

/// Ids of all rectangles intersecting `w`, each exactly once, with no
/// post-hoc deduplication. Result order is tile-major and unspecified to
/// consumers. Windows reaching outside the unit square are clipped; a
/// window entirely outside yields nothing.
pub fn window_query(g: &TwoLayerGrid, w: &Window, m: &mut Metrics) -> Vec<u64> {
    let Some(w) = w.clip_to_domain() else { return Vec::new() };
    let range = g.config().tile_range(&w).expect("clipped window is in domain");
    let mut out = Vec::new();
    for (i, j) in range.iter() {
        query_tile(g, &w, &range, i, j, m, &mut out);
    }
    out
}

/// [`window_query`] plus per-tile work counters, for comparison-bound
/// verification.
pub fn window_query_instrumented(
    g: &TwoLayerGrid,
    w: &Window,
    m: &mut Metrics,
) -> (Vec<u64>, Vec<TileQueryStats>) {
    let Some(w) = w.clip_to_domain() else { return (Vec::new(), Vec::new()) };
    let range = g.config().tile_range(&w).expect("clipped window is in domain");
    let mut out = Vec::new();
    let mut stats = Vec::new();
    for (i, j) in range.iter() {
        let before_cmp = m.coordinate_comparisons;
        let before_emit = m.results_emitted;
        let (plan, examined) = query_tile(g, &w, &range, i, j, m, &mut out);
        stats.push(TileQueryStats {
            tile: (i, j),
            plan,
            entries_examined: examined,
            comparisons: m.coordinate_comparisons - before_cmp,
            emitted: m.results_emitted - before_emit,
        });
    }
    (out, stats)
}

/// Tile-parallel variant of [`window_query`]: per-tile work fans out over
/// the current rayon pool and result slices concatenate in the same
/// tile-major order, so the output sequence is identical to the
/// sequential engine's.
#[cfg(feature = "parallel")]
pub fn window_query_par(g: &TwoLayerGrid, w: &Window, m: &mut Metrics) -> Vec<u64> {
    use rayon::prelude::*;
    let Some(w) = w.clip_to_domain() else { return Vec::new() };
    let range = g.config().tile_range(&w).expect("clipped window is in domain");
    let coords: Vec<(u32, u32)> = range.iter().collect();
    let per_tile: Vec<(Vec<u64>, Metrics)> = coords
        .par_iter()
        .map(|&(i, j)| {
            let mut local = Metrics::default();
            let mut out = Vec::new();
            query_tile(g, &w, &range, i, j, &mut local, &mut out);
            (out, local)
        })
        .collect();
    let mut out = Vec::new();
    for (ids, local) in per_tile {
        out.extend(ids);
        m.merge(&local);
    }
    out
}
