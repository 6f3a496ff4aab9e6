//! Dataset ingestion, min-max normalization, and the synthetic rectangle
//! and query-window generators used by the benchmarks.
//!
//! CSV rows are `id,xl,yl,xu,yu` in decimal text. Synthetic rectangles all
//! share one area; the width-to-height ratio is drawn uniformly from a
//! range (default [0.25, 4]) to avoid unnaturally narrow boxes.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write as _};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use thiserror::Error;

use crate::geom::{Rect, Window};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("dataset is empty")]
    Empty,
}

/// Summary statistics of a loaded dataset, post-normalization extents and
/// the pre-normalization bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetStats {
    pub cardinality: usize,
    pub avg_x_extent: f64,
    pub avg_y_extent: f64,
    /// (xmin, xmax, ymin, ymax) before normalization.
    pub bounding_box: (f64, f64, f64, f64),
}

/// Spatial distribution of generated rectangle centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialDistribution {
    Uniform,
    /// Rank-frequency Zipf (a = 1) over a fixed 1024-bucket discretization
    /// per axis, with intra-bucket uniform jitter.
    Zipf,
}

/// Parameters of the synthetic rectangle generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub cardinality: usize,
    /// Area shared by every rectangle; 0 produces degenerate points.
    pub area: f64,
    pub distribution: SpatialDistribution,
    pub ratio_range: (f64, f64),
    pub seed: u64,
}

impl GenSpec {
    pub fn uniform(cardinality: usize, area: f64, seed: u64) -> Self {
        GenSpec {
            cardinality,
            area,
            distribution: SpatialDistribution::Uniform,
            ratio_range: (0.25, 4.0),
            seed,
        }
    }
}

const ZIPF_BUCKETS: u32 = 1024;

/// A rectangle of the given area and width/height ratio centered at
/// (cx, cy), clipped to the unit square.
pub fn rect_from_center(id: u64, cx: f64, cy: f64, area: f64, ratio: f64) -> Rect {
    let width = (area * ratio).sqrt();
    let height = (area / ratio).sqrt();
    Rect {
        id,
        xl: (cx - width / 2.0).max(0.0),
        xu: (cx + width / 2.0).min(1.0),
        yl: (cy - height / 2.0).max(0.0),
        yu: (cy + height / 2.0).min(1.0),
    }
}

/// Generates `spec.cardinality` rectangles, deterministically per seed.
pub fn generate(spec: &GenSpec) -> Vec<Rect> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let zipf = Zipf::new(ZIPF_BUCKETS as f64, 1.0).expect("valid zipf parameters");
    let sample_center = |rng: &mut ChaCha8Rng| match spec.distribution {
        SpatialDistribution::Uniform => rng.random::<f64>(),
        SpatialDistribution::Zipf => {
            let bucket = zipf.sample(rng) as u32;
            let jitter = rng.random::<f64>();
            ((bucket - 1) as f64 + jitter) / ZIPF_BUCKETS as f64
        }
    };
    (0..spec.cardinality)
        .map(|k| {
            let cx = sample_center(&mut rng);
            let cy = sample_center(&mut rng);
            let ratio = rng.random_range(spec.ratio_range.0..=spec.ratio_range.1);
            rect_from_center(k as u64, cx, cy, spec.area, ratio)
        })
        .collect()
}

/// Square query windows of the given relative area (in percent of the
/// domain), each centered on the center of a data rectangle drawn at
/// random, so every window returns at least one result.
pub fn gen_windows(data: &[Rect], count: usize, rel_area_percent: f64, seed: u64) -> Vec<Window> {
    assert!(!data.is_empty(), "window generation needs a non-empty dataset");
    let side = (rel_area_percent / 100.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = &data[rng.random_range(0..data.len())];
            let c = r.center();
            Window {
                xl: (c.x - side / 2.0).max(0.0),
                xu: (c.x + side / 2.0).min(1.0),
                yl: (c.y - side / 2.0).max(0.0),
                yu: (c.y + side / 2.0).min(1.0),
            }
        })
        .collect()
}

/// Min-max normalizes coordinates per dimension into `[0, 1]`; returns
/// the pre-normalization bounding box. Already-normalized data (bounding
/// box spanning exactly `[0, 1]` per dimension) passes through
/// bit-identically.
pub fn normalize(rects: &mut [Rect]) -> (f64, f64, f64, f64) {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for r in rects.iter() {
        xmin = xmin.min(r.xl);
        xmax = xmax.max(r.xu);
        ymin = ymin.min(r.yl);
        ymax = ymax.max(r.yu);
    }
    let xrange = if xmax > xmin { xmax - xmin } else { 1.0 };
    let yrange = if ymax > ymin { ymax - ymin } else { 1.0 };
    for r in rects.iter_mut() {
        r.xl = ((r.xl - xmin) / xrange).clamp(0.0, 1.0);
        r.xu = ((r.xu - xmin) / xrange).clamp(0.0, 1.0);
        r.yl = ((r.yl - ymin) / yrange).clamp(0.0, 1.0);
        r.yu = ((r.yu - ymin) / yrange).clamp(0.0, 1.0);
    }
    (xmin, xmax, ymin, ymax)
}

/// Computes dataset statistics over normalized rectangles.
pub fn stats(rects: &[Rect], bounding_box: (f64, f64, f64, f64)) -> DatasetStats {
    let n = rects.len().max(1) as f64;
    DatasetStats {
        cardinality: rects.len(),
        avg_x_extent: rects.iter().map(Rect::width).sum::<f64>() / n,
        avg_y_extent: rects.iter().map(Rect::height).sum::<f64>() / n,
        bounding_box,
    }
}

/// Loads `id,xl,yl,xu,yu` rows, normalizes them to the unit square and
/// computes statistics. Malformed rows are reported with their line
/// number.
pub fn load_csv<P: AsRef<Path>>(path: P, has_header: bool) -> Result<(Vec<Rect>, DatasetStats), DataError> {
    let reader = BufReader::new(File::open(path)?);
    let mut rects = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if idx == 0 && has_header {
            continue;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        rects.push(parse_row(trimmed, line_no)?);
    }
    if rects.is_empty() {
        return Err(DataError::Empty);
    }
    let bbox = normalize(&mut rects);
    let stats = stats(&rects, bbox);
    Ok((rects, stats))
}

fn parse_row(row: &str, line: usize) -> Result<Rect, DataError> {
    let mut fields = row.split(',');
    let mut next = |name: &str| {
        fields
            .next()
            .ok_or_else(|| DataError::Malformed { line, reason: format!("missing field `{name}`") })
    };
    let id: u64 = next("id")?
        .trim()
        .parse()
        .map_err(|e| DataError::Malformed { line, reason: format!("bad id: {e}") })?;
    let mut num = |name: &str| -> Result<f64, DataError> {
        next(name)?
            .trim()
            .parse::<f64>()
            .map_err(|e| DataError::Malformed { line, reason: format!("bad {name}: {e}") })
    };
    let (xl, yl, xu, yu) = (num("xl")?, num("yl")?, num("xu")?, num("yu")?);
    Rect::new(id, xl, xu, yl, yu)
        .map_err(|e| DataError::Malformed { line, reason: e.to_string() })
}

/// Writes rectangles in the same `id,xl,yl,xu,yu` format `load_csv` reads.
pub fn write_csv<P: AsRef<Path>>(path: P, rects: &[Rect]) -> Result<(), DataError> {
    let mut out = BufWriter::new(File::create(path)?);
    for r in rects {
        writeln!(out, "{},{},{},{},{}", r.id, r.xl, r.yl, r.xu, r.yu)?;
    }
    out.flush()?;
    Ok(())
}
