//! Replicating quad-tree over the unit square. A quadrant splits into
//! four children (NW, NE, SW, SE) once its contents exceed the capacity,
//! replicating entries into every child they overlap; splitting stops at
//! the maximum depth. Leaf entries are kept classed against the leaf
//! quadrant, so duplicates can be handled either with the reference-point
//! rule or with the class-pruning analogue.

use crate::geom::{intersects, overlaps, reference_point, Point, Rect, Window};
use crate::grid::ClassId;
use crate::metrics::Metrics;

pub const DEFAULT_CAPACITY: usize = 1000;
pub const DEFAULT_MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy)]
struct Quadrant {
    xl: f64,
    xu: f64,
    yl: f64,
    yu: f64,
}

impl crate::geom::Extent for Quadrant {
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

impl Quadrant {
    /// Child quadrants in fixed NW, NE, SW, SE order.
    fn children(&self) -> [Quadrant; 4] {
        let mx = 0.5 * (self.xl + self.xu);
        let my = 0.5 * (self.yl + self.yu);
        [
            Quadrant { xl: self.xl, xu: mx, yl: my, yu: self.yu },
            Quadrant { xl: mx, xu: self.xu, yl: my, yu: self.yu },
            Quadrant { xl: self.xl, xu: mx, yl: self.yl, yu: my },
            Quadrant { xl: mx, xu: self.xu, yl: self.yl, yu: my },
        ]
    }

    /// Closed-open membership with the domain border closed.
    fn contains(&self, p: Point) -> bool {
        let in_x = p.x >= self.xl && (p.x < self.xu || (self.xu == 1.0 && p.x == 1.0));
        let in_y = p.y >= self.yl && (p.y < self.yu || (self.yu == 1.0 && p.y == 1.0));
        in_x && in_y
    }

    /// A rectangle is assigned to the quadrant iff it intersects it under
    /// this membership rule.
    fn assigned(&self, r: &Rect) -> bool {
        let in_x = r.xu >= self.xl && (r.xl < self.xu || (self.xu == 1.0 && r.xl <= 1.0));
        let in_y = r.yu >= self.yl && (r.yl < self.yu || (self.yu == 1.0 && r.yl <= 1.0));
        in_x && in_y
    }

    fn classify(&self, r: &Rect) -> ClassId {
        match (self.xl <= r.xl, self.yl <= r.yl) {
            (true, true) => ClassId::A,
            (true, false) => ClassId::B,
            (false, true) => ClassId::C,
            (false, false) => ClassId::D,
        }
    }
}

enum Node {
    Leaf { classes: [Vec<Rect>; 4] },
    Inner(Box<[Node; 4]>),
}

impl Node {
    fn empty_leaf() -> Node {
        Node::Leaf { classes: Default::default() }
    }
}

pub struct QuadTree {
    root: Node,
    capacity: usize,
    max_depth: u32,
    object_count: u64,
    replica_count: u64,
}

const ROOT: Quadrant = Quadrant { xl: 0.0, xu: 1.0, yl: 0.0, yu: 1.0 };

impl QuadTree {
    pub fn build(rects: &[Rect], capacity: usize, max_depth: u32) -> Self {
        let mut tree = QuadTree {
            root: Node::empty_leaf(),
            capacity: capacity.max(1),
            max_depth,
            object_count: 0,
            replica_count: 0,
        };
        for r in rects {
            tree.insert(*r);
        }
        tree
    }

    pub fn insert(&mut self, r: Rect) {
        self.object_count += 1;
        let mut replicas = 0;
        Self::insert_rec(&mut self.root, ROOT, 0, self.capacity, self.max_depth, r, &mut replicas);
        self.replica_count += replicas;
    }

    fn insert_rec(
        node: &mut Node,
        quad: Quadrant,
        depth: u32,
        capacity: usize,
        max_depth: u32,
        r: Rect,
        replicas: &mut u64,
    ) {
        let needs_split = match node {
            Node::Leaf { classes } => {
                classes[quad.classify(&r) as usize].push(r);
                *replicas += 1;
                classes.iter().map(Vec::len).sum::<usize>() > capacity && depth < max_depth
            }
            Node::Inner(children) => {
                for (child, cq) in children.iter_mut().zip(quad.children()) {
                    if cq.assigned(&r) {
                        Self::insert_rec(child, cq, depth + 1, capacity, max_depth, r, replicas);
                    }
                }
                false
            }
        };
        if needs_split {
            Self::split(node, quad, depth, capacity, max_depth, replicas);
        }
    }

    fn split(
        node: &mut Node,
        quad: Quadrant,
        depth: u32,
        capacity: usize,
        max_depth: u32,
        replicas: &mut u64,
    ) {
        let Node::Leaf { classes } = std::mem::replace(node, Node::empty_leaf()) else {
            unreachable!("split is only called on leaves")
        };
        let mut children: Box<[Node; 4]> = Box::new([
            Node::empty_leaf(),
            Node::empty_leaf(),
            Node::empty_leaf(),
            Node::empty_leaf(),
        ]);
        let quads = quad.children();
        for r in classes.into_iter().flatten() {
            *replicas -= 1;
            for (child, cq) in children.iter_mut().zip(quads) {
                if cq.assigned(&r) {
                    Self::insert_rec(child, cq, depth + 1, capacity, max_depth, r, replicas);
                }
            }
        }
        *node = Node::Inner(children);
    }

    pub fn object_count(&self) -> u64 {
        self.object_count
    }

    pub fn replica_count(&self) -> u64 {
        self.replica_count
    }

    /// Maximum leaf size and depth, for structural checks.
    pub fn leaf_stats(&self) -> (usize, u32) {
        fn rec(node: &Node, depth: u32, max_len: &mut usize, max_depth: &mut u32) {
            match node {
                Node::Leaf { classes } => {
                    *max_len = (*max_len).max(classes.iter().map(Vec::len).sum());
                    *max_depth = (*max_depth).max(depth);
                }
                Node::Inner(children) => {
                    for child in children.iter() {
                        rec(child, depth + 1, max_len, max_depth);
                    }
                }
            }
        }
        let mut max_len = 0;
        let mut max_depth = 0;
        rec(&self.root, 0, &mut max_len, &mut max_depth);
        (max_len, max_depth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadTreeQueryMode {
    /// Test every entry of every overlapping leaf; report a hit only when
    /// the reference point of its intersection with the window lies in the
    /// leaf quadrant.
    RefPoint,
    /// Skip whole classes that a previous leaf already covers: C and D
    /// when the window starts before the leaf in x, B and D when it starts
    /// before in y. No deduplication test afterwards.
    TwoLayer,
}

pub fn quadtree_query(t: &QuadTree, w: &Window, mode: QuadTreeQueryMode, m: &mut Metrics) -> Vec<u64> {
    let Some(w) = w.clip_to_domain() else { return Vec::new() };
    let mut out = Vec::new();
    fn rec(
        node: &Node,
        quad: Quadrant,
        w: &Window,
        mode: QuadTreeQueryMode,
        m: &mut Metrics,
        out: &mut Vec<u64>,
    ) {
        match node {
            Node::Inner(children) => {
                for (child, cq) in children.iter().zip(quad.children()) {
                    if overlaps(&cq, w) {
                        rec(child, cq, w, mode, m, out);
                    }
                }
            }
            Node::Leaf { classes } => match mode {
                QuadTreeQueryMode::RefPoint => {
                    for r in classes.iter().flatten() {
                        m.pairs_tested += 1;
                        if intersects(r, w, m) {
                            let p = reference_point(r, w)
                                .expect("intersection test established overlap");
                            if quad.contains(p) {
                                m.results_emitted += 1;
                                out.push(r.id);
                            } else {
                                m.duplicates_eliminated += 1;
                            }
                        }
                    }
                }
                QuadTreeQueryMode::TwoLayer => {
                    let skip_x = w.xl < quad.xl;
                    let skip_y = w.yl < quad.yl;
                    for c in ClassId::ALL {
                        let skipped = match c {
                            ClassId::A => false,
                            ClassId::B => skip_y,
                            ClassId::C => skip_x,
                            ClassId::D => skip_x || skip_y,
                        };
                        if skipped {
                            continue;
                        }
                        for r in &classes[c as usize] {
                            m.pairs_tested += 1;
                            if intersects(r, w, m) {
                                m.results_emitted += 1;
                                out.push(r.id);
                            }
                        }
                    }
                }
            },
        }
    }
    rec(&t.root, ROOT, &w, mode, m, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(id: u64, xl: f64, xu: f64, yl: f64, yu: f64) -> Rect {
        Rect::new(id, xl, xu, yl, yu).unwrap()
    }

    #[test]
    fn under_capacity_stays_a_single_leaf() {
        let rects: Vec<Rect> =
            (0..1000).map(|k| rect(k, 0.01, 0.02, 0.01 + k as f64 * 1e-5, 0.02)).collect();
        let t = QuadTree::build(&rects, DEFAULT_CAPACITY, DEFAULT_MAX_DEPTH);
        let (max_len, max_depth) = t.leaf_stats();
        assert_eq!(max_depth, 0, "no split");
        assert_eq!(max_len, 1000);
    }

    #[test]
    fn coincident_overflow_splits_to_max_depth_then_tolerates_overflow() {
        let rects: Vec<Rect> = (0..1001).map(|k| rect(k, 0.3, 0.3001, 0.3, 0.3001)).collect();
        let t = QuadTree::build(&rects, DEFAULT_CAPACITY, DEFAULT_MAX_DEPTH);
        let (max_len, max_depth) = t.leaf_stats();
        assert_eq!(max_depth, DEFAULT_MAX_DEPTH);
        assert!(max_len > DEFAULT_CAPACITY, "depth cap admits overflowing leaves");
    }

    #[test]
    fn uniform_data_keeps_leaves_within_capacity() {
        let rects = crate::dataio::generate(&crate::dataio::GenSpec::uniform(10_000, 1e-8, 5));
        let t = QuadTree::build(&rects, 1000, DEFAULT_MAX_DEPTH);
        let (max_len, _) = t.leaf_stats();
        assert!(max_len <= 1000, "leaf of size {max_len} exceeds capacity");
    }

    #[test]
    fn modes_agree_and_replicated_rect_is_emitted_once() {
        // Spans the NW/NE sibling boundary of the root split.
        let mut rects = vec![rect(777, 0.45, 0.55, 0.8, 0.9)];
        rects.extend(
            crate::dataio::generate(&crate::dataio::GenSpec::uniform(3000, 1e-6, 6))
                .into_iter()
                .map(|mut r| {
                    r.id += 1000;
                    r
                }),
        );
        let t = QuadTree::build(&rects, 500, DEFAULT_MAX_DEPTH);
        let w = Window::new(0.3, 0.7, 0.7, 1.0).unwrap();
        let mut m1 = Metrics::default();
        let mut m2 = Metrics::default();
        let mut ref_ids = quadtree_query(&t, &w, QuadTreeQueryMode::RefPoint, &mut m1);
        let mut two_ids = quadtree_query(&t, &w, QuadTreeQueryMode::TwoLayer, &mut m2);
        assert_eq!(two_ids.iter().filter(|&&id| id == 777).count(), 1);
        ref_ids.sort_unstable();
        two_ids.sort_unstable();
        assert_eq!(ref_ids, two_ids);
        assert_eq!(m2.duplicates_eliminated, 0, "pruning mode never deduplicates");
    }

    #[test]
    fn replica_count_matches_stored_entries() {
        let rects = crate::dataio::generate(&crate::dataio::GenSpec::uniform(5000, 1e-5, 12));
        let t = QuadTree::build(&rects, 300, DEFAULT_MAX_DEPTH);
        assert_eq!(t.object_count(), 5000);
        assert!(t.replica_count() >= t.object_count());
        fn stored(node: &Node) -> u64 {
            match node {
                Node::Leaf { classes } => classes.iter().map(|v| v.len() as u64).sum(),
                Node::Inner(children) => children.iter().map(stored).sum(),
            }
        }
        assert_eq!(stored(&t.root), t.replica_count());
    }

    #[test]
    fn window_inside_one_leaf_is_a_plain_scan() {
        let rects: Vec<Rect> = (0..10).map(|k| rect(k, 0.1, 0.2, 0.1, 0.2)).collect();
        let t = QuadTree::build(&rects, 1000, DEFAULT_MAX_DEPTH);
        let w = Window::new(0.15, 0.16, 0.15, 0.16).unwrap();
        let mut m = Metrics::default();
        let ids = quadtree_query(&t, &w, QuadTreeQueryMode::TwoLayer, &mut m);
        assert_eq!(ids.len(), 10);
        assert_eq!(m.pairs_tested, 10);
    }
}
