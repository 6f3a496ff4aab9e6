//! Shared oracles and dataset builders for the integration suites.
//!
//! The oracles are deliberately written from the raw inequalities rather
//! than through the library's predicates, so they stay independent of the
//! implementation paths they check.
#![allow(dead_code)] // not every suite uses every helper

use std::collections::HashSet;

use tlgrid::dataio::{generate, GenSpec, SpatialDistribution};
use tlgrid::join::JoinPair;
use tlgrid::{Rect, Window};

/// Independent four-inequality overlap test (closed intervals). Takes raw
/// coordinates so it cannot accidentally lean on library types.
#[allow(clippy::too_many_arguments)]
pub fn overlaps_oracle(
    axl: f64,
    axu: f64,
    ayl: f64,
    ayu: f64,
    bxl: f64,
    bxu: f64,
    byl: f64,
    byu: f64,
) -> bool {
    !(axu < bxl || axl > bxu || ayu < byl || ayl > byu)
}

/// Linear-scan window-query oracle.
pub fn scan_oracle(rects: &[Rect], w: &Window) -> HashSet<u64> {
    rects
        .iter()
        .filter(|r| overlaps_oracle(r.xl, r.xu, r.yl, r.yu, w.xl, w.xu, w.yl, w.yu))
        .map(|r| r.id)
        .collect()
}

/// Nested-loop join oracle over ordered (r, s) pairs.
pub fn nested_loop_oracle(rs: &[Rect], ss: &[Rect]) -> HashSet<JoinPair> {
    let mut out = HashSet::new();
    for r in rs {
        for s in ss {
            if overlaps_oracle(r.xl, r.xu, r.yl, r.yu, s.xl, s.xu, s.yl, s.yu) {
                out.insert(JoinPair { r_id: r.id, s_id: s.id });
            }
        }
    }
    out
}

/// Seeded dataset with ids offset so two collections never collide.
pub fn dataset(card: usize, area: f64, dist: SpatialDistribution, seed: u64, id0: u64) -> Vec<Rect> {
    generate(&GenSpec { cardinality: card, area, distribution: dist, ratio_range: (0.25, 4.0), seed })
        .into_iter()
        .map(|mut r| {
            r.id += id0;
            r
        })
        .collect()
}

/// Asserts a result id sequence is duplicate-free and returns it as a set.
pub fn assert_no_repeats(ids: &[u64], context: &str) -> HashSet<u64> {
    let set: HashSet<u64> = ids.iter().copied().collect();
    assert_eq!(set.len(), ids.len(), "repeated ids in raw emission order: {context}");
    set
}
