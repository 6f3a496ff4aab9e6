//! Single-layer grid baseline: identical primary partitioning to the
//! two-layer index, flat per-tile lists, duplicates eliminated with the
//! reference-point technique. Queries still use the per-tile comparison
//! plans, so any performance gap against the two-layer index isolates the
//! secondary partitioning itself.

use std::collections::{HashMap, HashSet};

use crate::geom::{Point, Rect, Window};
use crate::grid::{GridConfig, GridError, SortMode};
use crate::metrics::Metrics;
use crate::range::comparison_plan;

enum Store {
    Dense(Vec<Vec<Rect>>),
    Sparse(HashMap<(u32, u32), Vec<Rect>>),
}

pub type TileIter<'a> = Box<dyn Iterator<Item = ((u32, u32), &'a [Rect])> + 'a>;

pub struct OneLayerGrid {
    config: GridConfig,
    store: Store,
    ids: HashSet<u64>,
    replica_count: u64,
    sorted_by_xl: bool,
}

const DENSE_OCCUPANCY: f64 = 0.25;

impl OneLayerGrid {
    pub fn build(rects: &[Rect], config: GridConfig, sort_mode: SortMode) -> Result<Self, GridError> {
        let mut grid = OneLayerGrid {
            config,
            store: Store::Sparse(HashMap::new()),
            ids: HashSet::with_capacity(rects.len()),
            replica_count: 0,
            sorted_by_xl: false,
        };
        for r in rects {
            grid.insert(*r)?;
        }
        grid.maybe_densify();
        if sort_mode == SortMode::JoinReady {
            grid.sort_by_xl();
        }
        Ok(grid)
    }

    pub fn insert(&mut self, r: Rect) -> Result<(), GridError> {
        if !self.ids.insert(r.id) {
            return Err(GridError::DuplicateId(r.id));
        }
        let range = self
            .config
            .tile_range(&r)
            .map_err(|_| GridError::RectOutsideDomain { id: r.id })?;
        for (i, j) in range.iter() {
            match &mut self.store {
                Store::Dense(tiles) => {
                    tiles[j as usize * self.config.nx() as usize + i as usize].push(r)
                }
                Store::Sparse(map) => map.entry((i, j)).or_default().push(r),
            }
            self.replica_count += 1;
        }
        self.sorted_by_xl = false;
        Ok(())
    }

    pub fn sort_by_xl(&mut self) {
        let sort = |v: &mut Vec<Rect>| {
            v.sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap())
        };
        match &mut self.store {
            Store::Dense(tiles) => tiles.iter_mut().for_each(sort),
            Store::Sparse(map) => map.values_mut().for_each(sort),
        }
        self.sorted_by_xl = true;
    }

    fn maybe_densify(&mut self) {
        let Store::Sparse(map) = &mut self.store else { return };
        let total = self.config.tile_count();
        if (map.len() as f64) <= DENSE_OCCUPANCY * total as f64 {
            return;
        }
        let mut tiles = vec![Vec::new(); total];
        for ((i, j), list) in map.drain() {
            tiles[j as usize * self.config.nx() as usize + i as usize] = list;
        }
        self.store = Store::Dense(tiles);
    }

    pub fn tile(&self, i: u32, j: u32) -> Option<&[Rect]> {
        match &self.store {
            Store::Dense(tiles) => {
                let t = &tiles[j as usize * self.config.nx() as usize + i as usize];
                (!t.is_empty()).then_some(t.as_slice())
            }
            Store::Sparse(map) => map.get(&(i, j)).map(Vec::as_slice),
        }
    }

    /// Non-empty tiles and their coordinates, in unspecified order.
    pub fn tiles(&self) -> TileIter<'_> {
        match &self.store {
            Store::Dense(tiles) => {
                let nx = self.config.nx();
                Box::new(tiles.iter().enumerate().filter(|(_, t)| !t.is_empty()).map(
                    move |(idx, t)| {
                        (((idx % nx as usize) as u32, (idx / nx as usize) as u32), t.as_slice())
                    },
                ))
            }
            Store::Sparse(map) => Box::new(map.iter().map(|(&c, t)| (c, t.as_slice()))),
        }
    }

    pub fn config(&self) -> GridConfig {
        self.config
    }

    pub fn object_count(&self) -> u64 {
        self.ids.len() as u64
    }

    pub fn replica_count(&self) -> u64 {
        self.replica_count
    }

    pub fn is_sorted_by_xl(&self) -> bool {
        self.sorted_by_xl
    }
}

/// Window query with reference-point deduplication: every intersecting
/// entry of every intersecting tile is tested; a hit is reported only when
/// the lower corner of its intersection with the window lies in the
/// current tile.
pub fn one_layer_query(g: &OneLayerGrid, w: &Window, m: &mut Metrics) -> Vec<u64> {
    let Some(w) = w.clip_to_domain() else { return Vec::new() };
    let range = g.config().tile_range(&w).expect("clipped window is in domain");
    let mut out = Vec::new();
    for (i, j) in range.iter() {
        let plan = comparison_plan(i, j, &range);
        let Some(entries) = g.tile(i, j) else { continue };
        let interior = plan.is_interior();
        for r in entries {
            m.pairs_tested += 1;
            if !interior && !crate::range::plan_test_rect(r, &w, &plan, m) {
                continue;
            }
            // Lower corner of the intersection; the plan test (or full
            // coverage) established that it exists.
            let p = Point { x: r.xl.max(w.xl), y: r.yl.max(w.yl) };
            if g.config().point_in_tile(p, i, j) {
                m.results_emitted += 1;
                out.push(r.id);
            } else {
                m.duplicates_eliminated += 1;
            }
        }
    }
    out
}
