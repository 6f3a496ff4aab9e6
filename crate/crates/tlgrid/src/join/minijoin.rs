//! Tile-to-tile joins decomposed into class-to-class mini-joins.
//!
//! A tile join breaks into 4x4 = 16 class pairings. Seven of them (both
//! classes starting before the tile in x, or both in y) can only repeat
//! pairs that an earlier tile already produced, so exactly nine are ever
//! executed — and their output needs no deduplication at all. The
//! optimization levels select sweep kernels and y-test modes per kind.

use crate::grid::{ClassId, SortOrder, Tile};
use crate::join::sweep::{
    plane_sweep_impl, reduced_sweep_batch_impl, reduced_sweep_impl, YTestMode,
};
use crate::join::JoinPair;
use crate::metrics::Metrics;

/// One class-to-class join between the R side and the S side of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MiniJoinKind {
    pub r_class: ClassId,
    pub s_class: ClassId,
}

impl MiniJoinKind {
    pub const fn new(r_class: ClassId, s_class: ClassId) -> Self {
        MiniJoinKind { r_class, s_class }
    }
}

use ClassId::{A, B, C, D};

/// The nine mini-joins whose results cannot have been reported in any
/// earlier tile.
pub const EVALUATED_KINDS: [MiniJoinKind; 9] = [
    MiniJoinKind::new(A, A),
    MiniJoinKind::new(A, B),
    MiniJoinKind::new(B, A),
    MiniJoinKind::new(A, C),
    MiniJoinKind::new(C, A),
    MiniJoinKind::new(A, D),
    MiniJoinKind::new(D, A),
    MiniJoinKind::new(B, C),
    MiniJoinKind::new(C, B),
];

/// The seven mini-joins that produce only duplicates of pairs found in
/// earlier tiles.
pub const SKIPPED_KINDS: [MiniJoinKind; 7] = [
    MiniJoinKind::new(B, B),
    MiniJoinKind::new(B, D),
    MiniJoinKind::new(D, B),
    MiniJoinKind::new(C, C),
    MiniJoinKind::new(C, D),
    MiniJoinKind::new(D, C),
    MiniJoinKind::new(D, D),
];

/// Optimization level for tile joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinOpts {
    /// Plane sweep with full y tests for all nine mini-joins.
    Base,
    /// Reduced sweeps where one side is known to start first in x, and
    /// one-sided y tests where a start order in y is forced.
    SansUnnecessary,
    /// Base y tests, but xu-sorted batch scanning for the reduced kinds.
    SansRedundant,
    /// Both optimizations together.
    AllOpts,
}

/// Which kernel runs a kind and how the sides map onto it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepShape {
    /// Classic sweep, both sides sorted by xl.
    Standard,
    /// Reduced sweep; the R side starts inside the tile in x and is the
    /// sorted side, S is the probe side.
    ReducedProbeS,
    /// Reduced sweep with the roles swapped: S sorted, R probed.
    ReducedProbeR,
}

fn kind_shape(kind: MiniJoinKind) -> SweepShape {
    match (kind.r_class, kind.s_class) {
        (A, C) | (A, D) | (B, C) => SweepShape::ReducedProbeS,
        (C, A) | (D, A) | (C, B) => SweepShape::ReducedProbeR,
        _ => SweepShape::Standard,
    }
}

/// Y-test mode forced by the class definitions, in logical (r, s)
/// orientation.
fn kind_ymode(kind: MiniJoinKind) -> YTestMode {
    match (kind.r_class, kind.s_class) {
        (A, B) | (A, D) | (C, B) => YTestMode::SStartsBeforeR,
        (B, A) | (D, A) | (B, C) => YTestMode::RStartsBeforeS,
        _ => YTestMode::Full,
    }
}

fn y_pass(mode: YTestMode, r: &crate::geom::Rect, s: &crate::geom::Rect, m: &mut Metrics) -> bool {
    match mode {
        YTestMode::Full => crate::join::sweep::y_full(r, s, m),
        YTestMode::SStartsBeforeR => {
            m.coordinate_comparisons += 1;
            r.yl <= s.yu
        }
        YTestMode::RStartsBeforeS => {
            m.coordinate_comparisons += 1;
            s.yl <= r.yu
        }
    }
}

/// Runs one mini-join between `r_tile`'s `kind.r_class` and `s_tile`'s
/// `kind.s_class` under the given optimization level, appending pairs to
/// `out`. Any of the sixteen kinds is accepted; the seven skipped kinds
/// always run the base kernel (their class orderings justify no
/// optimization).
pub fn mini_join_into(
    r_tile: &Tile,
    s_tile: &Tile,
    kind: MiniJoinKind,
    opts: JoinOpts,
    m: &mut Metrics,
    out: &mut Vec<JoinPair>,
) {
    if r_tile.class(kind.r_class).is_empty() || s_tile.class(kind.s_class).is_empty() {
        return;
    }
    m.minijoins_executed += 1;

    let evaluated = EVALUATED_KINDS.contains(&kind);
    let shape = if evaluated && opts != JoinOpts::Base { kind_shape(kind) } else { SweepShape::Standard };
    let batch = matches!(opts, JoinOpts::SansRedundant | JoinOpts::AllOpts);
    let ymode = if evaluated && matches!(opts, JoinOpts::SansUnnecessary | JoinOpts::AllOpts) {
        kind_ymode(kind)
    } else {
        YTestMode::Full
    };

    let mut ytest = |r: &crate::geom::Rect, s: &crate::geom::Rect, m: &mut Metrics| {
        y_pass(ymode, r, s, m)
    };

    match shape {
        SweepShape::Standard => {
            let rs = r_tile.class_in_order(kind.r_class, SortOrder::ByXl);
            let ss = s_tile.class_in_order(kind.s_class, SortOrder::ByXl);
            plane_sweep_impl(
                rs.as_ref(),
                ss.as_ref(),
                &mut ytest,
                &mut |r, s, m| {
                    m.results_emitted += 1;
                    out.push(JoinPair { r_id: r.id, s_id: s.id });
                },
                m,
            );
        }
        SweepShape::ReducedProbeS => {
            let rs = r_tile.class_in_order(kind.r_class, SortOrder::ByXl);
            let probe_order = if batch { SortOrder::ByXu } else { SortOrder::None };
            let ss = s_tile.class_in_order(kind.s_class, probe_order);
            let mut emit = |r: &crate::geom::Rect, s: &crate::geom::Rect, m: &mut Metrics| {
                m.results_emitted += 1;
                out.push(JoinPair { r_id: r.id, s_id: s.id });
            };
            if batch {
                reduced_sweep_batch_impl(rs.as_ref(), ss.as_ref(), &mut ytest, &mut emit, m);
            } else {
                reduced_sweep_impl(rs.as_ref(), ss.as_ref(), &mut ytest, &mut emit, m);
            }
        }
        SweepShape::ReducedProbeR => {
            // Sorted side is S, probe side is R; the kernel sees (s, r)
            // and the adapters restore the logical orientation.
            let ss = s_tile.class_in_order(kind.s_class, SortOrder::ByXl);
            let probe_order = if batch { SortOrder::ByXu } else { SortOrder::None };
            let rs = r_tile.class_in_order(kind.r_class, probe_order);
            let mut swapped_ytest =
                |s: &crate::geom::Rect, r: &crate::geom::Rect, m: &mut Metrics| {
                    y_pass(ymode, r, s, m)
                };
            let mut emit = |s: &crate::geom::Rect, r: &crate::geom::Rect, m: &mut Metrics| {
                m.results_emitted += 1;
                out.push(JoinPair { r_id: r.id, s_id: s.id });
            };
            if batch {
                reduced_sweep_batch_impl(ss.as_ref(), rs.as_ref(), &mut swapped_ytest, &mut emit, m);
            } else {
                reduced_sweep_impl(ss.as_ref(), rs.as_ref(), &mut swapped_ytest, &mut emit, m);
            }
        }
    }
}

/// Convenience wrapper returning the pairs of a single mini-join.
pub fn mini_join(
    r_tile: &Tile,
    s_tile: &Tile,
    kind: MiniJoinKind,
    opts: JoinOpts,
    m: &mut Metrics,
) -> Vec<JoinPair> {
    let mut out = Vec::new();
    mini_join_into(r_tile, s_tile, kind, opts, m, &mut out);
    out
}

/// Joins the contents of one tile from R with the same tile from S by
/// executing exactly the nine duplicate-free mini-joins. All optimization
/// levels emit the identical pair set.
pub fn tile_join(r_tile: &Tile, s_tile: &Tile, opts: JoinOpts, m: &mut Metrics) -> Vec<JoinPair> {
    let mut out = Vec::new();
    tile_join_into(r_tile, s_tile, opts, m, &mut out);
    out
}

pub(crate) fn tile_join_into(
    r_tile: &Tile,
    s_tile: &Tile,
    opts: JoinOpts,
    m: &mut Metrics,
    out: &mut Vec<JoinPair>,
) {
    for kind in EVALUATED_KINDS {
        mini_join_into(r_tile, s_tile, kind, opts, m, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;
    use crate::grid::SortMode;
    use std::collections::HashSet;

    fn rect(id: u64, xl: f64, xu: f64, yl: f64, yu: f64) -> Rect {
        Rect::new(id, xl, xu, yl, yu).unwrap()
    }

    /// Builds a tile holding the given rectangles classed against the
    /// tile extent [0.5, 1) x [0.5, 1).
    fn tile_at_half(rects: &[Rect]) -> Tile {
        let cfg = crate::grid::GridConfig::square(2).unwrap();
        let ext = cfg.tile_extent(1, 1);
        let mut classes: [Vec<Rect>; 4] = Default::default();
        for r in rects {
            classes[crate::grid::classify(r, &ext).unwrap() as usize].push(*r);
        }
        Tile::from_classes(classes, SortMode::JoinReady)
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

    #[test]
    fn only_nonempty_minijoins_execute() {
        let r_tile = tile_at_half(&[rect(1, 0.6, 0.7, 0.6, 0.7)]);
        let s_tile = tile_at_half(&[rect(2, 0.65, 0.75, 0.65, 0.75)]);
        let mut m = Metrics::default();
        let pairs = tile_join(&r_tile, &s_tile, JoinOpts::Base, &mut m);
        assert_eq!(pairs, vec![JoinPair { r_id: 1, s_id: 2 }]);
        assert_eq!(m.minijoins_executed, 1, "only AA ran");
    }

    #[test]
    fn self_join_emits_identity_pair() {
        let t = tile_at_half(&[rect(1, 0.6, 0.7, 0.6, 0.7)]);
        let mut m = Metrics::default();
        let pairs = tile_join(&t, &t, JoinOpts::AllOpts, &mut m);
        assert_eq!(pairs, vec![JoinPair { r_id: 1, s_id: 1 }]);
    }

    fn random_tile_population(seed: u64, id0: u64) -> Vec<Rect> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rects = Vec::new();
        // Mix of placements producing all four classes for tile (1,1) of
        // a 2x2 grid.
        for k in 0..120u64 {
            let inside_x = rng.random_bool(0.5);
            let inside_y = rng.random_bool(0.5);
            let xl: f64 =
                if inside_x { rng.random_range(0.5..0.95) } else { rng.random_range(0.0..0.5) };
            let yl: f64 =
                if inside_y { rng.random_range(0.5..0.95) } else { rng.random_range(0.0..0.5) };
            let xu = (xl + rng.random_range(0.02..0.3)).min(1.0);
            let yu = (yl + rng.random_range(0.02..0.3)).min(1.0);
            if xu < 0.5 || yu < 0.5 {
                continue; // does not reach the tile
            }
            rects.push(rect(id0 + k, xl, xu, yl, yu));
        }
        rects
    }

    #[test]
    fn all_optimization_levels_agree_and_comparisons_are_ordered() {
        let rs = random_tile_population(7, 0);
        let ss = random_tile_population(8, 10_000);
        let r_tile = tile_at_half(&rs);
        let s_tile = tile_at_half(&ss);

        let run = |opts| {
            let mut m = Metrics::default();
            let mut pairs = tile_join(&r_tile, &s_tile, opts, &mut m);
            pairs.sort_unstable();
            (pairs, m)
        };
        let (base, m_base) = run(JoinOpts::Base);
        let (sans_u, m_sans_u) = run(JoinOpts::SansUnnecessary);
        let (sans_r, _m_sans_r) = run(JoinOpts::SansRedundant);
        let (all, m_all) = run(JoinOpts::AllOpts);

        assert_eq!(base, sans_u);
        assert_eq!(base, sans_r);
        assert_eq!(base, all);
        assert!(m_all.coordinate_comparisons <= m_sans_u.coordinate_comparisons);
        assert!(m_sans_u.coordinate_comparisons <= m_base.coordinate_comparisons);
    }

    #[test]
    fn nine_kinds_union_covers_the_in_tile_reference_pairs() {
        // For pairs whose joint lower corner falls in this tile, the nine
        // mini-joins must produce exactly the intersecting pairs.
        let rs = random_tile_population(9, 0);
        let ss = random_tile_population(10, 10_000);
        let r_tile = tile_at_half(&rs);
        let s_tile = tile_at_half(&ss);
        let mut m = Metrics::default();
        let got: HashSet<JoinPair> =
            tile_join(&r_tile, &s_tile, JoinOpts::AllOpts, &mut m).into_iter().collect();
        let expected: HashSet<JoinPair> = oracle(&rs, &ss)
            .into_iter()
            .filter(|p| {
                let r = rs.iter().find(|r| r.id == p.r_id).unwrap();
                let s = ss.iter().find(|s| s.id == p.s_id).unwrap();
                r.xl.max(s.xl) >= 0.5 && r.yl.max(s.yl) >= 0.5
            })
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn skipped_kinds_only_produce_pairs_owned_by_earlier_tiles() {
        let rs = random_tile_population(11, 0);
        let ss = random_tile_population(12, 10_000);
        let r_tile = tile_at_half(&rs);
        let s_tile = tile_at_half(&ss);
        let mut m = Metrics::default();
        for kind in SKIPPED_KINDS {
            for p in mini_join(&r_tile, &s_tile, kind, JoinOpts::Base, &mut m) {
                let r = rs.iter().find(|r| r.id == p.r_id).unwrap();
                let s = ss.iter().find(|s| s.id == p.s_id).unwrap();
                let joint_x = r.xl.max(s.xl);
                let joint_y = r.yl.max(s.yl);
                assert!(
                    joint_x < 0.5 || joint_y < 0.5,
                    "skipped kind {kind:?} produced a pair owned by this tile: {p:?}"
                );
            }
        }
    }
}
