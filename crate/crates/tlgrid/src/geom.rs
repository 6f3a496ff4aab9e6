//! Rectangle and window primitives shared by every index: intersection
//! tests with comparison accounting and the reference-point rule used by
//! the deduplicating baselines.

use thiserror::Error;

use crate::metrics::Metrics;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("extent is inverted or non-finite (xl={xl}, xu={xu}, yl={yl}, yu={yu})")]
    InvalidExtent { xl: f64, xu: f64, yl: f64, yu: f64 },
    #[error("rectangle and window do not intersect")]
    Disjoint,
}

/// Axis-aligned extent in the unit square. Implemented by [`Rect`],
/// [`Window`] and tile extents so predicates work across all of them.
pub trait Extent {
    fn xl(&self) -> f64;
    fn xu(&self) -> f64;
    fn yl(&self) -> f64;
    fn yu(&self) -> f64;
}

/// An object MBR with its identifier; the unit of indexing and joining.
///
/// Intervals are closed: touching edges intersect. Degenerate rectangles
/// (zero width or height) are legal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub id: u64,
    pub xl: f64,
    pub xu: f64,
    pub yl: f64,
    pub yu: f64,
}

impl Rect {
    pub fn new(id: u64, xl: f64, xu: f64, yl: f64, yu: f64) -> Result<Self, GeomError> {
        if !(xl.is_finite() && xu.is_finite() && yl.is_finite() && yu.is_finite())
            || xl > xu
            || yl > yu
        {
            return Err(GeomError::InvalidExtent { xl, xu, yl, yu });
        }
        Ok(Rect { id, xl, xu, yl, yu })
    }

    pub fn center(&self) -> Point {
        Point { x: 0.5 * (self.xl + self.xu), y: 0.5 * (self.yl + self.yu) }
    }

    pub fn width(&self) -> f64 {
        self.xu - self.xl
    }

    pub fn height(&self) -> f64 {
        self.yu - self.yl
    }
}

/// A query window: a rectangle without an identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xl: f64,
    pub xu: f64,
    pub yl: f64,
    pub yu: f64,
}

impl Window {
    pub fn new(xl: f64, xu: f64, yl: f64, yu: f64) -> Result<Self, GeomError> {
        if !(xl.is_finite() && xu.is_finite() && yl.is_finite() && yu.is_finite())
            || xl > xu
            || yl > yu
        {
            return Err(GeomError::InvalidExtent { xl, xu, yl, yu });
        }
        Ok(Window { xl, xu, yl, yu })
    }

    /// Clips the window to the unit square; `None` when nothing remains.
    pub fn clip_to_domain(&self) -> Option<Window> {
        let xl = self.xl.max(0.0);
        let xu = self.xu.min(1.0);
        let yl = self.yl.max(0.0);
        let yu = self.yu.min(1.0);
        if xl > xu || yl > yu {
            return None;
        }
        Some(Window { xl, xu, yl, yu })
    }
}

impl Extent for Rect {
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

impl Extent for Window {
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Closed-interval intersection test. Evaluates the four-comparison
/// disjunction with short-circuiting (xu < xl', xl > xu', yu < yl',
/// yl > yu') and charges exactly the comparisons it evaluated.
pub fn intersects<A: Extent, B: Extent>(a: &A, b: &B, m: &mut Metrics) -> bool {
    m.coordinate_comparisons += 1;
    if a.xu() < b.xl() {
        return false;
    }
    m.coordinate_comparisons += 1;
    if a.xl() > b.xu() {
        return false;
    }
    m.coordinate_comparisons += 1;
    if a.yu() < b.yl() {
        return false;
    }
    m.coordinate_comparisons += 1;
    a.yl() <= b.yu()
}

/// Uncounted intersection test for precondition guards and oracles-free
/// internal checks.
pub(crate) fn overlaps<A: Extent, B: Extent>(a: &A, b: &B) -> bool {
    a.xu() >= b.xl() && a.xl() <= b.xu() && a.yu() >= b.yl() && a.yl() <= b.yu()
}

/// Lower corner of the intersection region between `r` and `q`.
///
/// This is the canonical point used for duplicate elimination: it lies in
/// exactly one partition of any disjoint space partitioning.
pub fn reference_point(r: &Rect, q: &Window) -> Result<Point, GeomError> {
    if !overlaps(r, q) {
        return Err(GeomError::Disjoint);
    }
    Ok(Point { x: r.xl.max(q.xl), y: r.yl.max(q.yl) })
}

/// Lower corner of the intersection of two rectangles, for join-side
/// duplicate elimination. Caller guarantees the rectangles intersect.
pub(crate) fn pair_reference_point(r: &Rect, s: &Rect) -> Point {
    Point { x: r.xl.max(s.xl), y: r.yl.max(s.yl) }
}
