//! Comparison baselines: a single-layer grid and a replicating quad-tree,
//! both deduplicating via the reference-point rule, plus a quad-tree
//! variant that applies the secondary-class pruning instead.

mod one_layer;
mod quadtree;

pub use one_layer::{one_layer_query, OneLayerGrid};
pub use quadtree::{quadtree_query, QuadTree, QuadTreeQueryMode, DEFAULT_CAPACITY, DEFAULT_MAX_DEPTH};
