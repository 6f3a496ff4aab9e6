//! Reduced-tuple temporary index for the no-index join setting.
//!
//! When both inputs are partitioned online purely to be joined, class B
//! never needs its lower y (it always starts before the tile in y) and
//! class D needs neither lower coordinate (it is only ever joined against
//! class A of the other side, which it precedes in both dimensions). The
//! temporary index therefore stores `<id, xl, xu, yu>` for B and
//! `<id, xu, yu>` for D, while A and C keep full rectangles.
//!
//! The joins over this index are the all-optimizations mini-joins whose
//! kernels never read the dropped fields. The type intentionally offers
//! no window query: it cannot serve one.

use std::collections::{HashMap, HashSet};

use crate::geom::Rect;
use crate::grid::{classify, ClassId, GridConfig, GridError};
use crate::join::sweep::{
    plane_sweep_impl, reduced_sweep_batch_impl, y_full, SweepEntry, SweepEntryXl,
};
use crate::join::{JoinError, JoinPair};
use crate::metrics::Metrics;

/// Class-B entry: lower y dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBEntry {
    pub id: u64,
    pub xl: f64,
    pub xu: f64,
    pub yu: f64,
}

/// Class-D entry: both lower coordinates dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDEntry {
    pub id: u64,
    pub xu: f64,
    pub yu: f64,
}

impl SweepEntry for ReducedBEntry {
    fn xu(&self) -> f64 {
        self.xu
    }
    fn yu(&self) -> f64 {
        self.yu
    }
}

impl SweepEntryXl for ReducedBEntry {
    fn xl(&self) -> f64 {
        self.xl
    }
}

impl SweepEntry for ReducedDEntry {
    fn xu(&self) -> f64 {
        self.xu
    }
    fn yu(&self) -> f64 {
        self.yu
    }
}

#[derive(Debug, Default, Clone)]
pub struct ReducedTile {
    pub a: Vec<Rect>,
    pub b: Vec<ReducedBEntry>,
    pub c: Vec<Rect>,
    pub d: Vec<ReducedDEntry>,
}

/// Two-layer partitioning with reduced per-class tuples, always stored
/// join-ready (A, B by lower x; C, D by upper x).
pub struct ReducedTwoLayerGrid {
    config: GridConfig,
    tiles: HashMap<(u32, u32), ReducedTile>,
    replica_count: u64,
    object_count: u64,
}

/// Builds the reduced temporary index.
pub fn build_temp_reduced(rects: &[Rect], config: GridConfig) -> Result<ReducedTwoLayerGrid, GridError> {
    let mut ids = HashSet::with_capacity(rects.len());
    let mut tiles: HashMap<(u32, u32), ReducedTile> = HashMap::new();
    let mut replica_count = 0u64;
    for r in rects {
        if !ids.insert(r.id) {
            return Err(GridError::DuplicateId(r.id));
        }
        let range = config.tile_range(r).map_err(|_| GridError::RectOutsideDomain { id: r.id })?;
        for (i, j) in range.iter() {
            let ext = config.tile_extent(i, j);
            let tile = tiles.entry((i, j)).or_default();
            match classify(r, &ext).expect("tile_range yields intersecting tiles") {
                ClassId::A => tile.a.push(*r),
                ClassId::B => {
                    tile.b.push(ReducedBEntry { id: r.id, xl: r.xl, xu: r.xu, yu: r.yu })
                }
                ClassId::C => tile.c.push(*r),
                ClassId::D => tile.d.push(ReducedDEntry { id: r.id, xu: r.xu, yu: r.yu }),
            }
            replica_count += 1;
        }
    }
    for tile in tiles.values_mut() {
        tile.a.sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap());
        tile.b.sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap());
        tile.c.sort_unstable_by(|a, b| (a.xu, a.id).partial_cmp(&(b.xu, b.id)).unwrap());
        tile.d.sort_unstable_by(|a, b| (a.xu, a.id).partial_cmp(&(b.xu, b.id)).unwrap());
    }
    Ok(ReducedTwoLayerGrid {
        config,
        tiles,
        replica_count,
        object_count: rects.len() as u64,
    })
}

impl ReducedTwoLayerGrid {
    pub fn config(&self) -> GridConfig {
        self.config
    }

    pub fn tile(&self, i: u32, j: u32) -> Option<&ReducedTile> {
        self.tiles.get(&(i, j))
    }

    pub fn replica_count(&self) -> u64 {
        self.replica_count
    }

    pub fn object_count(&self) -> u64 {
        self.object_count
    }
}

/// Duplicate-free join over two reduced indices with identical grids,
/// running the nine mini-joins with every optimization that never touches
/// a dropped field.
pub fn reduced_join(
    rg: &ReducedTwoLayerGrid,
    sg: &ReducedTwoLayerGrid,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>, JoinError> {
    if rg.config != sg.config {
        return Err(JoinError::ConfigMismatch);
    }
    let mut coords: Vec<(u32, u32)> =
        rg.tiles.keys().filter(|c| sg.tiles.contains_key(c)).copied().collect();
    coords.sort_unstable_by_key(|&(i, j)| (j, i));

    let mut out = Vec::new();
    for (i, j) in coords {
        let rt = &rg.tiles[&(i, j)];
        let st = &sg.tiles[&(i, j)];
        reduced_tile_join(rt, st, m, &mut out);
    }
    Ok(out)
}

fn reduced_tile_join(rt: &ReducedTile, st: &ReducedTile, m: &mut Metrics, out: &mut Vec<JoinPair>) {
    // Adapters restoring the logical (r, s) orientation; y tests read only
    // the retained coordinates.
    macro_rules! run {
        ($kernel:ident, $rs:expr, $ss:expr, $ytest:expr, $emit_rs:expr) => {
            if !$rs.is_empty() && !$ss.is_empty() {
                m.minijoins_executed += 1;
                $kernel(&$rs[..], &$ss[..], &mut $ytest, &mut $emit_rs, m);
            }
        };
    }
    let mut emit = |r_id: u64, s_id: u64, m: &mut Metrics| {
        m.results_emitted += 1;
        out.push(JoinPair { r_id, s_id });
    };

    // AA: full rectangles on both sides.
    run!(
        plane_sweep_impl,
        &rt.a,
        &st.a,
        |r: &Rect, s: &Rect, m: &mut Metrics| y_full(r, s, m),
        |r: &Rect, s: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // AB: s starts before r in y; test r.yl <= s.yu.
    run!(
        plane_sweep_impl,
        &rt.a,
        &st.b,
        |r: &Rect, s: &ReducedBEntry, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            r.yl <= s.yu
        },
        |r: &Rect, s: &ReducedBEntry, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // BA: r starts before s in y; test s.yl <= r.yu.
    run!(
        plane_sweep_impl,
        &rt.b,
        &st.a,
        |r: &ReducedBEntry, s: &Rect, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            s.yl <= r.yu
        },
        |r: &ReducedBEntry, s: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // AC: batch sweep, full y test (both sides keep y intact).
    run!(
        reduced_sweep_batch_impl,
        &rt.a,
        &st.c,
        |r: &Rect, s: &Rect, m: &mut Metrics| y_full(r, s, m),
        |r: &Rect, s: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // CA: roles swapped (S sorted, R probed).
    run!(
        reduced_sweep_batch_impl,
        &st.a,
        &rt.c,
        |s: &Rect, r: &Rect, m: &mut Metrics| y_full(r, s, m),
        |s: &Rect, r: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // AD: s starts before r in both dimensions.
    run!(
        reduced_sweep_batch_impl,
        &rt.a,
        &st.d,
        |r: &Rect, s: &ReducedDEntry, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            r.yl <= s.yu
        },
        |r: &Rect, s: &ReducedDEntry, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // DA: swapped; r (class D) starts before s, test s.yl <= r.yu.
    run!(
        reduced_sweep_batch_impl,
        &st.a,
        &rt.d,
        |s: &Rect, r: &ReducedDEntry, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            s.yl <= r.yu
        },
        |s: &Rect, r: &ReducedDEntry, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // BC: r (class B) starts before s in y, test s.yl <= r.yu.
    run!(
        reduced_sweep_batch_impl,
        &rt.b,
        &st.c,
        |r: &ReducedBEntry, s: &Rect, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            s.yl <= r.yu
        },
        |r: &ReducedBEntry, s: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
    // CB: swapped; s (class B) starts before r in y, test r.yl <= s.yu.
    run!(
        reduced_sweep_batch_impl,
        &st.b,
        &rt.c,
        |s: &ReducedBEntry, r: &Rect, m: &mut Metrics| {
            m.coordinate_comparisons += 1;
            r.yl <= s.yu
        },
        |s: &ReducedBEntry, r: &Rect, m: &mut Metrics| emit(r.id, s.id, m)
    );
}
