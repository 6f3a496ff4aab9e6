//! Plane-sweep mini-join kernels.
//!
//! Three variants over x-interval intersection, all emitting the same pair
//! set on the same logical input:
//!
//! * [`plane_sweep`]: classic forward-scan sweep over two xl-sorted
//!   sequences.
//! * [`reduced_plane_sweep`]: when every `s` starts at or before every
//!   `r` (guaranteed by class combinations such as A against C), the merge
//!   step is pointless; each `s` forward-scans the prefix of `rs` it can
//!   reach. The `ss` side needs no sorting at all.
//! * [`reduced_plane_sweep_batch`]: additionally sorting `ss` by upper x
//!   lets one successful comparison admit the entire remaining suffix, so
//!   intersecting rectangles are found in batches.
//!
//! The generic `*_impl` kernels also back the reduced-storage join, whose
//! class-B and class-D entries carry fewer coordinates than a full
//! rectangle.

use crate::geom::Rect;
use crate::join::JoinPair;
use crate::metrics::Metrics;

/// Minimal view a sweep needs of an entry: the upper corner.
pub trait SweepEntry {
    fn xu(&self) -> f64;
    fn yu(&self) -> f64;
}

/// Entries that still know where they start in x (sweep sort key).
pub trait SweepEntryXl: SweepEntry {
    fn xl(&self) -> f64;
}

/// Entries that still know where they start in y (full y tests).
pub trait SweepEntryYl: SweepEntry {
    fn yl(&self) -> f64;
}

impl SweepEntry for Rect {
    fn xu(&self) -> f64 {
        self.xu
    }
    fn yu(&self) -> f64 {
        self.yu
    }
}

impl SweepEntryXl for Rect {
    fn xl(&self) -> f64 {
        self.xl
    }
}

impl SweepEntryYl for Rect {
    fn yl(&self) -> f64 {
        self.yl
    }
}

/// How the second dimension is verified for an (r, s) candidate.
///
/// The one-sided modes are sound only when the class combination forces
/// the corresponding start order in y (e.g. an s from class B starts
/// before the tile, hence before any r from class A).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YTestMode {
    /// Two-comparison containment test.
    Full,
    /// `s.yl <= r.yl` holds by construction; test `r.yl <= s.yu`.
    SStartsBeforeR,
    /// `r.yl <= s.yl` holds by construction; test `s.yl <= r.yu`.
    RStartsBeforeS,
}

/// Full interval test in y: the intervals intersect iff one contains the
/// other's start. Always exactly two comparisons.
pub(crate) fn y_full<R: SweepEntryYl, S: SweepEntryYl>(r: &R, s: &S, m: &mut Metrics) -> bool {
    m.coordinate_comparisons += 2;
    if r.yl() <= s.yl() {
        s.yl() <= r.yu()
    } else {
        r.yl() <= s.yu()
    }
}

fn y_pass(mode: YTestMode, r: &Rect, s: &Rect, m: &mut Metrics) -> bool {
    match mode {
        YTestMode::Full => y_full(r, s, m),
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

fn is_sorted_by_xl<E: SweepEntryXl>(es: &[E]) -> bool {
    es.windows(2).all(|w| w[0].xl() <= w[1].xl())
}

fn is_sorted_by_xu<E: SweepEntry>(es: &[E]) -> bool {
    es.windows(2).all(|w| w[0].xu() <= w[1].xu())
}

/// Forward-scan plane sweep over two xl-sorted sequences.
pub(crate) fn plane_sweep_impl<P, Q>(
    rs: &[P],
    ss: &[Q],
    ytest: &mut impl FnMut(&P, &Q, &mut Metrics) -> bool,
    emit: &mut impl FnMut(&P, &Q, &mut Metrics),
    m: &mut Metrics,
) where
    P: SweepEntryXl,
    Q: SweepEntryXl,
{
    debug_assert!(is_sorted_by_xl(rs), "plane_sweep input R must be sorted by xl");
    debug_assert!(is_sorted_by_xl(ss), "plane_sweep input S must be sorted by xl");
    let mut i = 0;
    let mut j = 0;
    while i < rs.len() && j < ss.len() {
        m.coordinate_comparisons += 1;
        if rs[i].xl() < ss[j].xl() {
            let r = &rs[i];
            for s in &ss[j..] {
                m.coordinate_comparisons += 1;
                if r.xu() < s.xl() {
                    break;
                }
                m.pairs_tested += 1;
                if ytest(r, s, m) {
                    emit(r, s, m);
                }
            }
            i += 1;
        } else {
            let s = &ss[j];
            for r in &rs[i..] {
                m.coordinate_comparisons += 1;
                if s.xu() < r.xl() {
                    break;
                }
                m.pairs_tested += 1;
                if ytest(r, s, m) {
                    emit(r, s, m);
                }
            }
            j += 1;
        }
    }
}

/// Reduced sweep: every `s` precedes every `r` in x, so each `s`
/// forward-scans the reachable prefix of `rs`.
pub(crate) fn reduced_sweep_impl<P, Q>(
    rs: &[P],
    ss: &[Q],
    ytest: &mut impl FnMut(&P, &Q, &mut Metrics) -> bool,
    emit: &mut impl FnMut(&P, &Q, &mut Metrics),
    m: &mut Metrics,
) where
    P: SweepEntryXl,
    Q: SweepEntry,
{
    debug_assert!(is_sorted_by_xl(rs), "reduced sweep input R must be sorted by xl");
    for s in ss {
        for r in rs {
            m.coordinate_comparisons += 1;
            if s.xu() < r.xl() {
                break;
            }
            m.pairs_tested += 1;
            if ytest(r, s, m) {
                emit(r, s, m);
            }
        }
    }
}

/// Batch-outputting reduced sweep: with `ss` sorted by upper x, the first
/// `s` reaching the current `r` admits the whole suffix with no further
/// x comparisons.
pub(crate) fn reduced_sweep_batch_impl<P, Q>(
    rs: &[P],
    ss: &[Q],
    ytest: &mut impl FnMut(&P, &Q, &mut Metrics) -> bool,
    emit: &mut impl FnMut(&P, &Q, &mut Metrics),
    m: &mut Metrics,
) where
    P: SweepEntryXl,
    Q: SweepEntry,
{
    debug_assert!(is_sorted_by_xl(rs), "batch sweep input R must be sorted by xl");
    debug_assert!(is_sorted_by_xu(ss), "batch sweep input S must be sorted by xu");
    let mut p = 0;
    for r in rs {
        while p < ss.len() {
            m.coordinate_comparisons += 1;
            if ss[p].xu() < r.xl() {
                p += 1;
            } else {
                break;
            }
        }
        if p == ss.len() {
            break;
        }
        for s in &ss[p..] {
            m.pairs_tested += 1;
            if ytest(r, s, m) {
                emit(r, s, m);
            }
        }
    }
}

fn emit_pair(out: &mut Vec<JoinPair>) -> impl FnMut(&Rect, &Rect, &mut Metrics) + '_ {
    move |r, s, m| {
        m.results_emitted += 1;
        out.push(JoinPair { r_id: r.id, s_id: s.id });
    }
}

fn debug_assert_precedes(rs: &[Rect], ss: &[Rect]) {
    if let Some(first) = rs.first() {
        debug_assert!(
            ss.iter().all(|s| s.xl <= first.xl),
            "reduced sweep requires every s to start at or before every r"
        );
    }
}

/// Plane-sweep mini-join over two xl-sorted rectangle sequences, emitting
/// every pair intersecting in x that passes the y test.
pub fn plane_sweep(rs: &[Rect], ss: &[Rect], ymode: YTestMode, m: &mut Metrics) -> Vec<JoinPair> {
    let mut out = Vec::new();
    plane_sweep_impl(rs, ss, &mut |r, s, m| y_pass(ymode, r, s, m), &mut emit_pair(&mut out), m);
    out
}

/// Reduced sweep over class-constrained inputs; `ss` may be in any order.
pub fn reduced_plane_sweep(
    rs: &[Rect],
    ss: &[Rect],
    ymode: YTestMode,
    m: &mut Metrics,
) -> Vec<JoinPair> {
    debug_assert_precedes(rs, ss);
    let mut out = Vec::new();
    reduced_sweep_impl(rs, ss, &mut |r, s, m| y_pass(ymode, r, s, m), &mut emit_pair(&mut out), m);
    out
}

/// Reduced sweep with batch outputting; `ss` must be sorted by upper x.
pub fn reduced_plane_sweep_batch(
    rs: &[Rect],
    ss: &[Rect],
    ymode: YTestMode,
    m: &mut Metrics,
) -> Vec<JoinPair> {
    debug_assert_precedes(rs, ss);
    let mut out = Vec::new();
    reduced_sweep_batch_impl(
        rs,
        ss,
        &mut |r, s, m| y_pass(ymode, r, s, m),
        &mut emit_pair(&mut out),
        m,
    );
    out
}
