//! The two-layer index: a regular grid over the unit square whose tiles
//! keep their rectangles split into four secondary classes.
//!
//! A rectangle is replicated into every tile its extent intersects. Within
//! a tile it is classed by where its lower corner sits relative to the
//! tile: class A begins inside the tile in both dimensions, B begins
//! inside in x only, C in y only, D in neither. Every rectangle is in
//! class A of exactly one tile, which is what lets queries and joins skip
//! duplicate work entirely.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::geom::{overlaps, Extent, Point, Rect};

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid must have at least one tile per dimension")]
    InvalidConfig,
    #[error("point ({x}, {y}) lies outside the unit square")]
    PointOutsideDomain { x: f64, y: f64 },
    #[error("rectangle {id} lies outside the unit square")]
    RectOutsideDomain { id: u64 },
    #[error("duplicate object id {0}")]
    DuplicateId(u64),
    #[error("rectangle does not intersect the tile extent")]
    RectOutsideTile,
    #[error("average extent must be positive and finite")]
    NonPositiveExtent,
}

/// Upper bound for [`suggest_granularity`], matching the explored range of
/// several thousand partitions per dimension.
pub const GRANULARITY_CAP: u32 = 10_000;

/// Tile counts of a regular grid over the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    nx: u32,
    ny: u32,
}

impl GridConfig {
    pub fn new(nx: u32, ny: u32) -> Result<Self, GridError> {
        if nx == 0 || ny == 0 {
            return Err(GridError::InvalidConfig);
        }
        Ok(GridConfig { nx, ny })
    }

    pub fn square(n: u32) -> Result<Self, GridError> {
        GridConfig::new(n, n)
    }

    pub fn nx(&self) -> u32 {
        self.nx
    }

    pub fn ny(&self) -> u32 {
        self.ny
    }

    pub fn tile_count(&self) -> usize {
        self.nx as usize * self.ny as usize
    }

    fn boundary(k: u32, n: u32) -> f64 {
        k as f64 / n as f64
    }

    /// Index of the tile owning coordinate `v` along an axis with `n`
    /// tiles. Tiles own `[k/n, (k+1)/n)`; the last tile also owns 1.0.
    ///
    /// Floor division alone can land one off when `v` sits on (or within a
    /// rounding error of) a boundary, so the result is corrected against
    /// the actual boundary values. Every other membership decision in the
    /// crate goes through this function, keeping classification, reference
    /// points and tile extents mutually consistent.
    fn tile_axis(v: f64, n: u32) -> u32 {
        let mut k = ((v * n as f64) as i64).clamp(0, n as i64 - 1) as u32;
        if v < Self::boundary(k, n) {
            k = k.saturating_sub(1);
        } else if k + 1 < n && v >= Self::boundary(k + 1, n) {
            k += 1;
        }
        k
    }

    /// Tile containing a point of the unit square.
    pub fn tile_of(&self, p: Point) -> Result<(u32, u32), GridError> {
        if !(0.0..=1.0).contains(&p.x) || !(0.0..=1.0).contains(&p.y) {
            return Err(GridError::PointOutsideDomain { x: p.x, y: p.y });
        }
        Ok((Self::tile_axis(p.x, self.nx), Self::tile_axis(p.y, self.ny)))
    }

    pub(crate) fn tile_of_unchecked(&self, x: f64, y: f64) -> (u32, u32) {
        (Self::tile_axis(x, self.nx), Self::tile_axis(y, self.ny))
    }

    /// Inclusive index ranges of every tile intersecting `e`, computed
    /// from the two corners in O(1).
    pub fn tile_range<E: Extent>(&self, e: &E) -> Result<TileRange, GridError> {
        let in_domain = |v: f64| (0.0..=1.0).contains(&v);
        if !(in_domain(e.xl()) && in_domain(e.xu()) && in_domain(e.yl()) && in_domain(e.yu())) {
            return Err(GridError::PointOutsideDomain { x: e.xl(), y: e.yl() });
        }
        Ok(TileRange {
            i0: Self::tile_axis(e.xl(), self.nx),
            i1: Self::tile_axis(e.xu(), self.nx),
            j0: Self::tile_axis(e.yl(), self.ny),
            j1: Self::tile_axis(e.yu(), self.ny),
        })
    }

    /// Spatial extent of tile (i, j).
    pub fn tile_extent(&self, i: u32, j: u32) -> TileExtent {
        TileExtent {
            xl: Self::boundary(i, self.nx),
            xu: Self::boundary(i + 1, self.nx),
            yl: Self::boundary(j, self.ny),
            yu: Self::boundary(j + 1, self.ny),
        }
    }

    /// True when point `p` belongs to tile (i, j) under the closed-open
    /// membership rule (last row/column closed at the domain border).
    pub fn point_in_tile(&self, p: Point, i: u32, j: u32) -> bool {
        Self::tile_axis(p.x, self.nx) == i && Self::tile_axis(p.y, self.ny) == j
    }
}

/// Inclusive tile-index ranges covering a rectangle or window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileRange {
    pub i0: u32,
    pub i1: u32,
    pub j0: u32,
    pub j1: u32,
}

impl TileRange {
    pub fn contains(&self, i: u32, j: u32) -> bool {
        (self.i0..=self.i1).contains(&i) && (self.j0..=self.j1).contains(&j)
    }

    /// Row-major iteration over the covered tile coordinates.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let (i0, i1, j0) = (self.i0, self.i1, self.j0);
        (j0..=self.j1).flat_map(move |j| (i0..=i1).map(move |i| (i, j)))
    }
}

/// Spatial extent of one tile; membership is closed-open per dimension,
/// except that tiles on the last column/row are closed at the domain
/// border.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TileExtent {
    pub xl: f64,
    pub xu: f64,
    pub yl: f64,
    pub yu: f64,
}

impl Extent for TileExtent {
    fn xl(&self) -> f64 {
        self.xl
    }
    fn xu(&self) -> f64 {
        self.xu
    }
    fn yl(&self) -> f64 {
        self.yl
    }
    fn yu(&self) -> f64 {
        self.yu
    }
}

/// Secondary class of a rectangle within a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl ClassId {
    pub const ALL: [ClassId; 4] = [ClassId::A, ClassId::B, ClassId::C, ClassId::D];
}

/// Class of `r` relative to tile extent `t`: whether the lower corner
/// begins inside the tile per dimension (non-strict at the tile's lower
/// boundary).
pub fn classify(r: &Rect, t: &TileExtent) -> Result<ClassId, GridError> {
    if !overlaps(r, t) {
        return Err(GridError::RectOutsideTile);
    }
    let x_inside = t.xl <= r.xl;
    let y_inside = t.yl <= r.yl;
    Ok(match (x_inside, y_inside) {
        (true, true) => ClassId::A,
        (true, false) => ClassId::B,
        (false, true) => ClassId::C,
        (false, false) => ClassId::D,
    })
}

/// Sort key currently holding for a class sequence.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    #[default]
    None,
    ByXl,
    ByXu,
}

/// Whether build leaves class sequences unsorted or in join-ready order
/// (A, B by lower x; C, D by upper x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortMode {
    None,
    JoinReady,
}

/// One tile's four secondary partitions.
#[derive(Debug, Default, Clone)]
pub struct Tile {
    classes: [Vec<Rect>; 4],
    sort_state: [SortOrder; 4],
}

impl Tile {
    /// Assembles a tile directly from per-class sequences; used by the
    /// grid-transformation join to materialize temporary tiles.
    pub fn from_classes(classes: [Vec<Rect>; 4], sort_mode: SortMode) -> Tile {
        let mut tile = Tile { classes, sort_state: [SortOrder::None; 4] };
        if sort_mode == SortMode::JoinReady {
            tile.sort_join_ready();
        }
        tile
    }

    pub fn class(&self, c: ClassId) -> &[Rect] {
        &self.classes[c as usize]
    }

    /// Class contents in the requested order, borrowing when the stored
    /// order already matches. `SortOrder::None` means any order.
    pub fn class_in_order(&self, c: ClassId, order: SortOrder) -> std::borrow::Cow<'_, [Rect]> {
        use std::borrow::Cow;
        let idx = c as usize;
        if order == SortOrder::None || self.sort_state[idx] == order {
            return Cow::Borrowed(&self.classes[idx]);
        }
        let mut copy = self.classes[idx].clone();
        match order {
            SortOrder::ByXl => {
                copy.sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap())
            }
            SortOrder::ByXu => {
                copy.sort_unstable_by(|a, b| (a.xu, a.id).partial_cmp(&(b.xu, b.id)).unwrap())
            }
            SortOrder::None => unreachable!(),
        }
        Cow::Owned(copy)
    }

    pub fn sort_state(&self, c: ClassId) -> SortOrder {
        self.sort_state[c as usize]
    }

    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.iter().all(Vec::is_empty)
    }

    fn push(&mut self, c: ClassId, r: Rect) {
        let idx = c as usize;
        // Appends keep a sort flag only while the order is preserved;
        // ties break by id.
        let keep = match self.sort_state[idx] {
            SortOrder::None => false,
            SortOrder::ByXl => self.classes[idx]
                .last()
                .is_none_or(|last| (last.xl, last.id) <= (r.xl, r.id)),
            SortOrder::ByXu => self.classes[idx]
                .last()
                .is_none_or(|last| (last.xu, last.id) <= (r.xu, r.id)),
        };
        if !keep {
            self.sort_state[idx] = SortOrder::None;
        }
        self.classes[idx].push(r);
    }

    fn sort_join_ready(&mut self) {
        for c in [ClassId::A, ClassId::B] {
            self.classes[c as usize]
                .sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap());
            self.sort_state[c as usize] = SortOrder::ByXl;
        }
        for c in [ClassId::C, ClassId::D] {
            self.classes[c as usize]
                .sort_unstable_by(|a, b| (a.xu, a.id).partial_cmp(&(b.xu, b.id)).unwrap());
            self.sort_state[c as usize] = SortOrder::ByXu;
        }
    }
}

/// Occupancy fraction above which tiles move to a dense array.
const DENSE_OCCUPANCY: f64 = 0.25;

enum TileStore {
    Dense(Vec<Tile>),
    Sparse(HashMap<(u32, u32), Tile>),
}

/// The two-layer index over a set of rectangles.
pub struct TwoLayerGrid {
    config: GridConfig,
    store: TileStore,
    ids: HashSet<u64>,
    replica_count: u64,
}

impl TwoLayerGrid {
    /// Builds the index. Ids must be unique, rectangles normalized to the
    /// unit square.
    pub fn build(rects: &[Rect], config: GridConfig, sort_mode: SortMode) -> Result<Self, GridError> {
        let mut grid = TwoLayerGrid {
            config,
            store: TileStore::Sparse(HashMap::new()),
            ids: HashSet::with_capacity(rects.len()),
            replica_count: 0,
        };
        for r in rects {
            grid.insert(*r)?;
        }
        grid.maybe_densify();
        if sort_mode == SortMode::JoinReady {
            grid.sort_join_ready();
        }
        Ok(grid)
    }

    /// Inserts one rectangle into every tile it intersects. Equivalent to
    /// rebuilding from scratch with `r` appended, except for sequence
    /// order within a class.
    pub fn insert(&mut self, r: Rect) -> Result<(), GridError> {
        if !self.ids.insert(r.id) {
            return Err(GridError::DuplicateId(r.id));
        }
        let range = self
            .config
            .tile_range(&r)
            .map_err(|_| GridError::RectOutsideDomain { id: r.id })?;
        for (i, j) in range.iter() {
            let extent = self.config.tile_extent(i, j);
            let class = classify(&r, &extent).expect("tile_range yields intersecting tiles");
            self.tile_mut(i, j).push(class, r);
            self.replica_count += 1;
        }
        Ok(())
    }

    /// Sorts every tile into join-ready order.
    pub fn sort_join_ready(&mut self) {
        match &mut self.store {
            TileStore::Dense(tiles) => tiles.iter_mut().for_each(Tile::sort_join_ready),
            TileStore::Sparse(map) => map.values_mut().for_each(Tile::sort_join_ready),
        }
    }

    fn maybe_densify(&mut self) {
        let TileStore::Sparse(map) = &mut self.store else { return };
        let total = self.config.tile_count();
        if (map.len() as f64) <= DENSE_OCCUPANCY * total as f64 {
            return;
        }
        let mut tiles = vec![Tile::default(); total];
        for ((i, j), tile) in map.drain() {
            tiles[j as usize * self.config.nx as usize + i as usize] = tile;
        }
        self.store = TileStore::Dense(tiles);
    }

    fn tile_mut(&mut self, i: u32, j: u32) -> &mut Tile {
        match &mut self.store {
            TileStore::Dense(tiles) => &mut tiles[j as usize * self.config.nx as usize + i as usize],
            TileStore::Sparse(map) => map.entry((i, j)).or_default(),
        }
    }

    pub fn tile(&self, i: u32, j: u32) -> Option<&Tile> {
        match &self.store {
            TileStore::Dense(tiles) => {
                let t = &tiles[j as usize * self.config.nx as usize + i as usize];
                (!t.is_empty()).then_some(t)
            }
            TileStore::Sparse(map) => map.get(&(i, j)),
        }
    }

    /// Non-empty tiles with their coordinates, in unspecified order.
    pub fn tiles(&self) -> Box<dyn Iterator<Item = ((u32, u32), &Tile)> + '_> {
        match &self.store {
            TileStore::Dense(tiles) => {
                let nx = self.config.nx;
                Box::new(tiles.iter().enumerate().filter(|(_, t)| !t.is_empty()).map(
                    move |(idx, t)| {
                        let i = (idx % nx as usize) as u32;
                        let j = (idx / nx as usize) as u32;
                        ((i, j), t)
                    },
                ))
            }
            TileStore::Sparse(map) => Box::new(map.iter().map(|(&coord, t)| (coord, t))),
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

    pub fn contains_id(&self, id: u64) -> bool {
        self.ids.contains(&id)
    }
}

/// Grid granularity from average object extents: tile side ten times the
/// average object side per dimension, clamped to `[1, cap]`.
pub fn suggest_granularity(avg_x_extent: f64, avg_y_extent: f64) -> Result<GridConfig, GridError> {
    suggest_granularity_capped(avg_x_extent, avg_y_extent, GRANULARITY_CAP)
}

pub fn suggest_granularity_capped(
    avg_x_extent: f64,
    avg_y_extent: f64,
    cap: u32,
) -> Result<GridConfig, GridError> {
    if !(avg_x_extent > 0.0 && avg_y_extent > 0.0)
        || !avg_x_extent.is_finite()
        || !avg_y_extent.is_finite()
    {
        return Err(GridError::NonPositiveExtent);
    }
    let per_dim = |extent: f64| ((1.0 / (10.0 * extent)).round() as i64).clamp(1, cap as i64) as u32;
    GridConfig::new(per_dim(avg_x_extent), per_dim(avg_y_extent))
}
