//! Whole-input join strategies.
//!
//! * Identical grids on both inputs: per-tile mini-joins, duplicate-free
//!   by construction.
//! * PBSM baseline over single-layer grids: per-tile plane sweep with
//!   reference-point deduplication.
//! * Different power-of-two granularities: the finer grid is rewindowed
//!   to the coarser per coarse tile, either materialized or on the fly.
//! * One input indexed: scan the other and probe with window queries,
//!   optionally grouping probes with a coarse grid for locality.

use std::borrow::Cow;

use thiserror::Error;

use crate::baseline::OneLayerGrid;
use crate::geom::{pair_reference_point, Rect, Window};
use crate::grid::{ClassId, GridConfig, SortMode, Tile, TwoLayerGrid};
use crate::join::minijoin::{mini_join_into, tile_join_into, JoinOpts, MiniJoinKind};
use crate::join::sweep::{plane_sweep_impl, y_full};
use crate::join::JoinPair;
use crate::metrics::Metrics;
use crate::range::window_query;

#[derive(Debug, Error, PartialEq)]
pub enum JoinError {
    #[error("join inputs must be partitioned by identical grids")]
    ConfigMismatch,
    #[error("grid transformation requires square power-of-two granularities")]
    NotPowerOfTwo,
    #[error("grid transformation requires the coarse granularity to divide the fine one")]
    NotNested,
}

fn common_coords<'a, A>(a: A, b: &TwoLayerGrid) -> Vec<(u32, u32)>
where
    A: Iterator<Item = ((u32, u32), &'a Tile)>,
{
    let mut coords: Vec<(u32, u32)> =
        a.filter(|((i, j), _)| b.tile(*i, *j).is_some()).map(|(c, _)| c).collect();
    coords.sort_unstable_by_key(|&(i, j)| (j, i));
    coords
}

/// Spatial join of two collections indexed by identical grids. Every
/// intersecting (r, s) pair is emitted exactly once; there is no
/// deduplication pass to disable.
pub fn join_identical_grids(
    rg: &TwoLayerGrid,
    sg: &TwoLayerGrid,
    opts: JoinOpts,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>, JoinError> {
    if rg.config() != sg.config() {
        return Err(JoinError::ConfigMismatch);
    }
    let mut out = Vec::new();
    for (i, j) in common_coords(rg.tiles(), sg) {
        let (rt, st) = (rg.tile(i, j).unwrap(), sg.tile(i, j).unwrap());
        tile_join_into(rt, st, opts, m, &mut out);
    }
    Ok(out)
}

/// Tile-parallel variant of [`join_identical_grids`]: per-tile tasks fan
/// out over the current rayon pool with one `Metrics` each, merged in tile
/// order afterwards. The emitted pair sequence is identical to the
/// sequential engine's.
#[cfg(feature = "parallel")]
pub fn join_identical_grids_par(
    rg: &TwoLayerGrid,
    sg: &TwoLayerGrid,
    opts: JoinOpts,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>, JoinError> {
    use rayon::prelude::*;
    if rg.config() != sg.config() {
        return Err(JoinError::ConfigMismatch);
    }
    let coords = common_coords(rg.tiles(), sg);
    let per_tile: Vec<(Vec<JoinPair>, Metrics)> = coords
        .par_iter()
        .map(|&(i, j)| {
            let mut local = Metrics::default();
            let mut out = Vec::new();
            tile_join_into(rg.tile(i, j).unwrap(), sg.tile(i, j).unwrap(), opts, &mut local, &mut out);
            (out, local)
        })
        .collect();
    let mut out = Vec::new();
    for (pairs, local) in per_tile {
        out.extend(pairs);
        m.merge(&local);
    }
    Ok(out)
}

fn xl_sorted<'a>(entries: &'a [Rect], already_sorted: bool) -> Cow<'a, [Rect]> {
    if already_sorted {
        return Cow::Borrowed(entries);
    }
    let mut copy = entries.to_vec();
    copy.sort_unstable_by(|a, b| (a.xl, a.id).partial_cmp(&(b.xl, b.id)).unwrap());
    Cow::Owned(copy)
}

/// PBSM baseline: per-tile plane sweep over the flat single-layer
/// partitions, keeping a pair only when the lower corner of the two
/// rectangles' intersection falls inside the tile.
pub fn pbsm_one_layer_join(
    rg: &OneLayerGrid,
    sg: &OneLayerGrid,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>, JoinError> {
    if rg.config() != sg.config() {
        return Err(JoinError::ConfigMismatch);
    }
    let cfg = rg.config();
    let mut coords: Vec<(u32, u32)> =
        rg.tiles().filter(|((i, j), _)| sg.tile(*i, *j).is_some()).map(|(c, _)| c).collect();
    coords.sort_unstable_by_key(|&(i, j)| (j, i));

    let mut out = Vec::new();
    for (i, j) in coords {
        let rs = xl_sorted(rg.tile(i, j).unwrap(), rg.is_sorted_by_xl());
        let ss = xl_sorted(sg.tile(i, j).unwrap(), sg.is_sorted_by_xl());
        plane_sweep_impl(
            &rs,
            &ss,
            &mut |r, s, m| y_full(r, s, m),
            &mut |r, s, m| {
                let p = pair_reference_point(r, s);
                if cfg.point_in_tile(p, i, j) {
                    m.results_emitted += 1;
                    out.push(JoinPair { r_id: r.id, s_id: s.id });
                } else {
                    m.duplicates_eliminated += 1;
                }
            },
            m,
        );
    }
    Ok(out)
}

/// Ratio between two nested square power-of-two granularities.
fn transform_ratio(coarse: GridConfig, fine: GridConfig) -> Result<u32, JoinError> {
    if coarse.nx() != coarse.ny() || fine.nx() != fine.ny() {
        return Err(JoinError::NotPowerOfTwo);
    }
    if !coarse.nx().is_power_of_two() || !fine.nx().is_power_of_two() {
        return Err(JoinError::NotPowerOfTwo);
    }
    if fine.nx() < coarse.nx() {
        return Err(JoinError::NotNested);
    }
    Ok(fine.nx() / coarse.nx())
}

/// Contents of the four secondary classes of one coarse tile, assembled
/// from a finer nested index without touching the raw rectangles:
/// class A unions the A classes of all overlapped fine tiles, class B the
/// B classes of the first overlapped row, class C the C classes of the
/// first overlapped column, and class D comes from the corner tile alone.
pub fn rewindow_classes(
    coarse: GridConfig,
    coarse_tile: (u32, u32),
    fine: &TwoLayerGrid,
) -> Result<[Vec<Rect>; 4], JoinError> {
    let q = transform_ratio(coarse, fine.config())?;
    let (ci, cj) = coarse_tile;
    let (i0, j0) = (ci * q, cj * q);
    let mut classes: [Vec<Rect>; 4] = Default::default();
    for dj in 0..q {
        for di in 0..q {
            let Some(tile) = fine.tile(i0 + di, j0 + dj) else { continue };
            classes[ClassId::A as usize].extend_from_slice(tile.class(ClassId::A));
            if dj == 0 {
                classes[ClassId::B as usize].extend_from_slice(tile.class(ClassId::B));
            }
            if di == 0 {
                classes[ClassId::C as usize].extend_from_slice(tile.class(ClassId::C));
            }
            if di == 0 && dj == 0 {
                classes[ClassId::D as usize].extend_from_slice(tile.class(ClassId::D));
            }
        }
    }
    Ok(classes)
}

/// Variant of the different-granularity join.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformVariant {
    /// Materialize a temporary coarse tile from the fine index, then run
    /// the ordinary tile join.
    Materialized,
    /// Never build the temporary classes; decompose each mini-join over
    /// the overlapped fine tiles directly.
    OnTheFly,
}

/// Which fine tiles of the overlapped block feed the S side of a kind.
fn fine_sources(kind: MiniJoinKind, i0: u32, j0: u32, q: u32) -> Vec<(u32, u32)> {
    match kind.s_class {
        ClassId::A => (0..q).flat_map(|dj| (0..q).map(move |di| (i0 + di, j0 + dj))).collect(),
        ClassId::B => (0..q).map(|di| (i0 + di, j0)).collect(),
        ClassId::C => (0..q).map(|dj| (i0, j0 + dj)).collect(),
        ClassId::D => vec![(i0, j0)],
    }
}

/// Joins a coarse-indexed input with a finer-indexed one (nested
/// power-of-two grids) without re-indexing either collection.
pub fn transform_join(
    rg_coarse: &TwoLayerGrid,
    sg_fine: &TwoLayerGrid,
    variant: TransformVariant,
    opts: JoinOpts,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>, JoinError> {
    let q = transform_ratio(rg_coarse.config(), sg_fine.config())?;
    let mut coords: Vec<(u32, u32)> = rg_coarse.tiles().map(|(c, _)| c).collect();
    coords.sort_unstable_by_key(|&(i, j)| (j, i));

    let mut out = Vec::new();
    for (ci, cj) in coords {
        let r_tile = rg_coarse.tile(ci, cj).unwrap();
        match variant {
            TransformVariant::Materialized => {
                let classes = rewindow_classes(rg_coarse.config(), (ci, cj), sg_fine)?;
                if classes.iter().all(Vec::is_empty) {
                    continue;
                }
                m.temp_tiles_materialized += 1;
                let s_tile = Tile::from_classes(classes, SortMode::JoinReady);
                tile_join_into(r_tile, &s_tile, opts, m, &mut out);
            }
            TransformVariant::OnTheFly => {
                let (i0, j0) = (ci * q, cj * q);
                for kind in crate::join::minijoin::EVALUATED_KINDS {
                    if r_tile.class(kind.r_class).is_empty() {
                        continue;
                    }
                    for (fi, fj) in fine_sources(kind, i0, j0, q) {
                        let Some(s_tile) = sg_fine.tile(fi, fj) else { continue };
                        mini_join_into(r_tile, s_tile, kind, opts, m, &mut out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Probe order for [`probe_join`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeStrategy {
    /// Input order.
    ForLoop,
    /// Group probes by the k x k grid cell containing each rectangle's
    /// lower corner, improving index locality. Assignment affects
    /// iteration order only; no replication, hence no deduplication.
    CoarseGrid(u32),
}

/// Index-based join: scans R and issues one window query on the indexed S
/// per rectangle.
pub fn probe_join(
    rs: &[Rect],
    sg: &TwoLayerGrid,
    strategy: ProbeStrategy,
    m: &mut Metrics,
) -> Vec<JoinPair> {
    let mut out = Vec::new();
    let probe = |r: &Rect, m: &mut Metrics, out: &mut Vec<JoinPair>| {
        let w = Window { xl: r.xl, xu: r.xu, yl: r.yl, yu: r.yu };
        for s_id in window_query(sg, &w, m) {
            out.push(JoinPair { r_id: r.id, s_id });
        }
    };
    match strategy {
        ProbeStrategy::ForLoop => {
            for r in rs {
                probe(r, m, &mut out);
            }
        }
        ProbeStrategy::CoarseGrid(k) => {
            let cfg = GridConfig::square(k.max(1)).expect("positive tile count");
            let mut cells: Vec<Vec<&Rect>> = vec![Vec::new(); cfg.tile_count()];
            for r in rs {
                let (i, j) = cfg.tile_of_unchecked(r.xl, r.yl);
                cells[j as usize * cfg.nx() as usize + i as usize].push(r);
            }
            for cell in cells {
                for r in cell {
                    probe(r, m, &mut out);
                }
            }
        }
    }
    out
}

/// Cost summary used to pick which input of a both-indexed join to
/// re-index when falling back to identical grids.
#[derive(Debug, Clone, PartialEq)]
pub struct ReindexCost {
    pub cardinality: u64,
    pub avg_x_extent: f64,
    pub avg_y_extent: f64,
}

/// Reports the per-input quantities behind the usual "re-index the
/// smaller or smaller-extent input" heuristic; the decision stays with
/// the caller.
pub fn reindex_cost(rects: &[Rect]) -> ReindexCost {
    let n = rects.len().max(1) as f64;
    ReindexCost {
        cardinality: rects.len() as u64,
        avg_x_extent: rects.iter().map(Rect::width).sum::<f64>() / n,
        avg_y_extent: rects.iter().map(Rect::height).sum::<f64>() / n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::classify;
    use std::collections::HashSet;

    fn rect(id: u64, xl: f64, xu: f64, yl: f64, yu: f64) -> Rect {
        Rect::new(id, xl, xu, yl, yu).unwrap()
    }

    fn oracle(rs: &[Rect], ss: &[Rect]) -> HashSet<JoinPair> {
        let mut pairs = HashSet::new();
        for r in rs {
            for s in ss {
                if r.xu >= s.xl && r.xl <= s.xu && r.yu >= s.yl && r.yl <= s.yu {
                    pairs.insert(JoinPair { r_id: r.id, s_id: s.id });
                }
            }
        }
        pairs
    }

    fn gen(card: usize, area: f64, seed: u64, id0: u64) -> Vec<Rect> {
        crate::dataio::generate(&crate::dataio::GenSpec::uniform(card, area, seed))
            .into_iter()
            .map(|mut r| {
                r.id += id0;
                r
            })
            .collect()
    }

    #[test]
    fn spanning_rect_meets_corner_rect_exactly_once() {
        let cfg = GridConfig::square(2).unwrap();
        let rs = vec![rect(2, 0.4, 0.6, 0.4, 0.6)];
        let ss = vec![rect(100, 0.55, 0.65, 0.55, 0.65)];
        let rg = TwoLayerGrid::build(&rs, cfg, SortMode::JoinReady).unwrap();
        let sg = TwoLayerGrid::build(&ss, cfg, SortMode::JoinReady).unwrap();
        let mut m = Metrics::default();
        let pairs = join_identical_grids(&rg, &sg, JoinOpts::AllOpts, &mut m).unwrap();
        assert_eq!(pairs, vec![JoinPair { r_id: 2, s_id: 100 }]);
        // The only populated pairing in tile (1,1) is r's class D against
        // s's class A.
        let ext = cfg.tile_extent(1, 1);
        assert_eq!(classify(&rs[0], &ext).unwrap(), ClassId::D);
        assert_eq!(classify(&ss[0], &ext).unwrap(), ClassId::A);
    }

    #[test]
    fn disjoint_tiles_produce_nothing() {
        let cfg = GridConfig::square(4).unwrap();
        let rg =
            TwoLayerGrid::build(&[rect(1, 0.05, 0.1, 0.05, 0.1)], cfg, SortMode::JoinReady).unwrap();
        let sg =
            TwoLayerGrid::build(&[rect(2, 0.8, 0.9, 0.8, 0.9)], cfg, SortMode::JoinReady).unwrap();
        let mut m = Metrics::default();
        assert!(join_identical_grids(&rg, &sg, JoinOpts::Base, &mut m).unwrap().is_empty());
    }

    #[test]
    fn identical_grid_join_matches_oracle_without_dedup() {
        let rs = gen(1500, 2e-4, 31, 0);
        let ss = gen(1500, 2e-4, 32, 1_000_000);
        let cfg = GridConfig::square(8).unwrap();
        let rg = TwoLayerGrid::build(&rs, cfg, SortMode::JoinReady).unwrap();
        let sg = TwoLayerGrid::build(&ss, cfg, SortMode::JoinReady).unwrap();
        let expected = oracle(&rs, &ss);
        for opts in [JoinOpts::Base, JoinOpts::SansUnnecessary, JoinOpts::SansRedundant, JoinOpts::AllOpts] {
            let mut m = Metrics::default();
            let pairs = join_identical_grids(&rg, &sg, opts, &mut m).unwrap();
            assert_eq!(pairs.len(), expected.len(), "no duplicate emissions under {opts:?}");
            let got: HashSet<JoinPair> = pairs.into_iter().collect();
            assert_eq!(got, expected, "{opts:?}");
            assert_eq!(m.duplicates_eliminated, 0);
        }
    }

    #[test]
    fn config_mismatch_is_rejected() {
        let rg = TwoLayerGrid::build(&[], GridConfig::square(2).unwrap(), SortMode::None).unwrap();
        let sg = TwoLayerGrid::build(&[], GridConfig::square(4).unwrap(), SortMode::None).unwrap();
        let mut m = Metrics::default();
        assert_eq!(
            join_identical_grids(&rg, &sg, JoinOpts::Base, &mut m).err(),
            Some(JoinError::ConfigMismatch)
        );
    }

    #[test]
    fn pbsm_reference_point_keeps_the_owning_tile() {
        let cfg = GridConfig::square(2).unwrap();
        let rg = OneLayerGrid::build(&[rect(2, 0.4, 0.6, 0.4, 0.6)], cfg, SortMode::JoinReady)
            .unwrap();
        let sg = OneLayerGrid::build(&[rect(100, 0.55, 0.65, 0.55, 0.65)], cfg, SortMode::JoinReady)
            .unwrap();
        let mut m = Metrics::default();
        let pairs = pbsm_one_layer_join(&rg, &sg, &mut m).unwrap();
        assert_eq!(pairs, vec![JoinPair { r_id: 2, s_id: 100 }]);
        assert_eq!(m.duplicates_eliminated, 0, "pair co-occurs in one tile only");
    }

    #[test]
    fn pbsm_suppresses_replicated_pair_hits() {
        let cfg = GridConfig::square(2).unwrap();
        // Both rectangles span all four tiles; the pair is found 4 times.
        let rg = OneLayerGrid::build(&[rect(1, 0.4, 0.6, 0.4, 0.6)], cfg, SortMode::JoinReady)
            .unwrap();
        let sg = OneLayerGrid::build(&[rect(2, 0.45, 0.62, 0.45, 0.62)], cfg, SortMode::JoinReady)
            .unwrap();
        let mut m = Metrics::default();
        let pairs = pbsm_one_layer_join(&rg, &sg, &mut m).unwrap();
        assert_eq!(pairs, vec![JoinPair { r_id: 1, s_id: 2 }]);
        assert_eq!(m.duplicates_eliminated, 3);
    }

    #[test]
    fn pbsm_empty_side_is_empty() {
        let cfg = GridConfig::square(2).unwrap();
        let rg = OneLayerGrid::build(&[rect(1, 0.4, 0.6, 0.4, 0.6)], cfg, SortMode::None).unwrap();
        let sg = OneLayerGrid::build(&[], cfg, SortMode::None).unwrap();
        let mut m = Metrics::default();
        assert!(pbsm_one_layer_join(&rg, &sg, &mut m).unwrap().is_empty());
    }

    #[test]
    fn rewindow_identity_when_granularities_match() {
        let data = gen(400, 1e-3, 33, 0);
        let cfg = GridConfig::square(4).unwrap();
        let g = TwoLayerGrid::build(&data, cfg, SortMode::None).unwrap();
        for ((i, j), tile) in g.tiles() {
            let classes = rewindow_classes(cfg, (i, j), &g).unwrap();
            for c in ClassId::ALL {
                let mut got: Vec<u64> = classes[c as usize].iter().map(|r| r.id).collect();
                let mut want: Vec<u64> = tile.class(c).iter().map(|r| r.id).collect();
                got.sort_unstable();
                want.sort_unstable();
                assert_eq!(got, want, "tile ({i},{j}) class {c:?}");
            }
        }
    }

    #[test]
    fn rewindow_draws_from_sixteen_fine_tiles() {
        let coarse = GridConfig::square(2).unwrap();
        let fine_cfg = GridConfig::square(8).unwrap();
        assert_eq!(transform_ratio(coarse, fine_cfg).unwrap(), 4);
        let data = gen(500, 1e-3, 34, 0);
        let fine = TwoLayerGrid::build(&data, fine_cfg, SortMode::None).unwrap();
        // Every rectangle intersecting the coarse tile must reappear with
        // its class relative to the coarse tile.
        for (ci, cj) in [(0u32, 0u32), (1, 0), (0, 1), (1, 1)] {
            let classes = rewindow_classes(coarse, (ci, cj), &fine).unwrap();
            let ext = coarse.tile_extent(ci, cj);
            let mut expected: [Vec<u64>; 4] = Default::default();
            for r in &data {
                if r.xu >= ext.xl && r.xl < ext.xu && r.yu >= ext.yl && r.yl < ext.yu {
                    expected[classify(r, &ext).unwrap() as usize].push(r.id);
                }
            }
            for c in ClassId::ALL {
                let mut got: Vec<u64> = classes[c as usize].iter().map(|r| r.id).collect();
                got.sort_unstable();
                expected[c as usize].sort_unstable();
                assert_eq!(got, expected[c as usize], "coarse tile ({ci},{cj}) class {c:?}");
            }
        }
    }

    #[test]
    fn rewindow_rejects_bad_granularities() {
        let data = gen(10, 1e-3, 35, 0);
        let fine = TwoLayerGrid::build(&data, GridConfig::square(6).unwrap(), SortMode::None).unwrap();
        assert_eq!(
            rewindow_classes(GridConfig::square(2).unwrap(), (0, 0), &fine).err(),
            Some(JoinError::NotPowerOfTwo)
        );
        let fine = TwoLayerGrid::build(&data, GridConfig::square(2).unwrap(), SortMode::None).unwrap();
        assert_eq!(
            rewindow_classes(GridConfig::square(4).unwrap(), (0, 0), &fine).err(),
            Some(JoinError::NotNested)
        );
    }

    #[test]
    fn transform_variants_match_each_other_and_the_oracle() {
        let rs = gen(800, 4e-4, 36, 0);
        let ss = gen(800, 4e-4, 37, 1_000_000);
        let rg = TwoLayerGrid::build(&rs, GridConfig::square(2).unwrap(), SortMode::JoinReady)
            .unwrap();
        let sg = TwoLayerGrid::build(&ss, GridConfig::square(8).unwrap(), SortMode::JoinReady)
            .unwrap();
        let expected = oracle(&rs, &ss);
        let mut m_mat = Metrics::default();
        let mat =
            transform_join(&rg, &sg, TransformVariant::Materialized, JoinOpts::AllOpts, &mut m_mat)
                .unwrap();
        let mut m_fly = Metrics::default();
        let fly =
            transform_join(&rg, &sg, TransformVariant::OnTheFly, JoinOpts::AllOpts, &mut m_fly)
                .unwrap();
        assert_eq!(mat.iter().collect::<HashSet<_>>(), expected.iter().collect::<HashSet<_>>());
        assert_eq!(fly.iter().collect::<HashSet<_>>(), expected.iter().collect::<HashSet<_>>());
        assert_eq!(mat.len(), expected.len());
        assert_eq!(fly.len(), expected.len());
        assert!(m_mat.temp_tiles_materialized > 0);
        assert_eq!(m_fly.temp_tiles_materialized, 0, "on-the-fly never materializes");
    }

    #[test]
    fn transform_with_equal_granularity_equals_identical_grid_join() {
        let rs = gen(600, 4e-4, 38, 0);
        let ss = gen(600, 4e-4, 39, 1_000_000);
        let cfg = GridConfig::square(4).unwrap();
        let rg = TwoLayerGrid::build(&rs, cfg, SortMode::JoinReady).unwrap();
        let sg = TwoLayerGrid::build(&ss, cfg, SortMode::JoinReady).unwrap();
        let mut m1 = Metrics::default();
        let mut direct = join_identical_grids(&rg, &sg, JoinOpts::AllOpts, &mut m1).unwrap();
        direct.sort_unstable();
        for variant in [TransformVariant::OnTheFly, TransformVariant::Materialized] {
            let mut m2 = Metrics::default();
            let mut via = transform_join(&rg, &sg, variant, JoinOpts::AllOpts, &mut m2).unwrap();
            via.sort_unstable();
            assert_eq!(direct, via, "{variant:?}");
        }
    }

    #[test]
    fn reindex_cost_reports_cardinality_and_extents() {
        let rects = vec![rect(1, 0.0, 0.2, 0.0, 0.1), rect(2, 0.5, 0.9, 0.5, 0.8)];
        let cost = reindex_cost(&rects);
        assert_eq!(cost.cardinality, 2);
        assert!((cost.avg_x_extent - 0.3).abs() < 1e-12);
        assert!((cost.avg_y_extent - 0.2).abs() < 1e-12);
    }

    #[test]
    fn probe_strategies_agree_with_the_oracle() {
        let rs = gen(300, 5e-4, 40, 0);
        let ss = gen(900, 5e-4, 41, 1_000_000);
        let sg = TwoLayerGrid::build(&ss, GridConfig::square(6).unwrap(), SortMode::None).unwrap();
        let expected = oracle(&rs, &ss);
        let mut m = Metrics::default();
        let for_loop: HashSet<JoinPair> =
            probe_join(&rs, &sg, ProbeStrategy::ForLoop, &mut m).into_iter().collect();
        let grid: HashSet<JoinPair> =
            probe_join(&rs, &sg, ProbeStrategy::CoarseGrid(10), &mut m).into_iter().collect();
        assert_eq!(for_loop, expected);
        assert_eq!(grid, expected);
        assert!(probe_join(&[], &sg, ProbeStrategy::ForLoop, &mut m).is_empty());
    }
}
