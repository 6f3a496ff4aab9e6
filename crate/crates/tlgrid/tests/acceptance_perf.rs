//! Timing-sensitive acceptance criteria, kept in their own binary and
//! serialized through a mutex so they never compete for cores with each
//! other. Thresholds are deliberately loose relative to the effects they
//! check (which are integer factors), but these tests do measure wall
//! clock and can flake on a heavily oversubscribed machine.

mod common;

use std::sync::Mutex;
use std::time::Instant;

use tlgrid::baseline::{one_layer_query, OneLayerGrid};
use tlgrid::checksum::id_checksum;
use tlgrid::dataio::{gen_windows, generate, GenSpec};
use tlgrid::grid::{GridConfig, SortMode, TwoLayerGrid};
use tlgrid::range::window_query;
use tlgrid::{Metrics, Rect, Window};

static SERIAL: Mutex<()> = Mutex::new(());

const CARD: usize = 1_000_000;
const AREA: f64 = 1e-10;
const QUERIES: usize = 10_000;
const REL_AREA: f64 = 0.1;

fn workload() -> (Vec<Rect>, Vec<Window>) {
    let data = generate(&GenSpec::uniform(CARD, AREA, 42));
    let windows = gen_windows(&data, QUERIES, REL_AREA, 43);
    (data, windows)
}

/// Best-of-two timed passes after a short warmup, to keep cache and
/// allocator state comparable across configurations.
fn measure(windows: &[Window], mut run: impl FnMut(&Window) -> u64) -> (f64, u64) {
    for w in &windows[..windows.len().min(500)] {
        run(w);
    }
    let mut best = f64::INFINITY;
    let mut checksum = 0u64;
    for _ in 0..2 {
        let start = Instant::now();
        let mut sum = 0u64;
        for w in windows {
            sum = sum.wrapping_add(run(w));
        }
        best = best.min(start.elapsed().as_secs_f64());
        checksum = sum;
    }
    (windows.len() as f64 / best, checksum)
}

fn run_two_layer(data: &[Rect], windows: &[Window], n: u32) -> (f64, u64) {
    let g = TwoLayerGrid::build(data, GridConfig::square(n).unwrap(), SortMode::None).unwrap();
    let mut m = Metrics::default();
    measure(windows, |w| id_checksum(window_query(&g, w, &mut m)))
}

fn run_one_layer(data: &[Rect], windows: &[Window], n: u32) -> (f64, u64) {
    let g = OneLayerGrid::build(data, GridConfig::square(n).unwrap(), SortMode::None).unwrap();
    let mut m = Metrics::default();
    measure(windows, |w| id_checksum(one_layer_query(&g, w, &mut m)))
}

/// Criterion 7: at its best swept granularity each, the two-layer grid
/// answers the standard window workload at least 1.3x faster than the
/// one-layer grid with reference-point deduplication.
#[test]
fn criterion_7_relative_throughput() {
    let _guard = SERIAL.lock().unwrap();
    let (data, windows) = workload();
    let sweep = [64u32, 128, 256, 512, 1024];

    let mut best_two: (f64, u32) = (0.0, 0);
    let mut best_one: (f64, u32) = (0.0, 0);
    let mut checksums = Vec::new();
    for n in sweep {
        let (tput2, sum2) = run_two_layer(&data, &windows, n);
        let (tput1, sum1) = run_one_layer(&data, &windows, n);
        assert_eq!(sum2, sum1, "result mismatch between indices at granularity {n}");
        checksums.push(sum2);
        if tput2 > best_two.0 {
            best_two = (tput2, n);
        }
        if tput1 > best_one.0 {
            best_one = (tput1, n);
        }
        eprintln!("granularity {n:5}: 2-layer {tput2:9.0} q/s, 1-layer {tput1:9.0} q/s");
    }
    assert!(checksums.windows(2).all(|w| w[0] == w[1]), "checksum varies across granularities");
    let ratio = best_two.0 / best_one.0;
    eprintln!(
        "best: 2-layer {:0.0} q/s @ {}, 1-layer {:0.0} q/s @ {}, ratio {ratio:.2}",
        best_two.0, best_two.1, best_one.0, best_one.1
    );
    assert!(
        ratio >= 1.3,
        "two-layer best throughput must be at least 1.3x one-layer (got {ratio:.2}x)"
    );
    println!("ACCEPTANCE criterion 7 (relative throughput >= 1.3x, got {ratio:.2}x): PASS");
}

/// Criterion 8: bulk-load 90% of the data, time the incremental insert of
/// the remaining 10%; the two-layer insert cost stays within 1.5x of the
/// one-layer cost and the updated index answers queries identically to a
/// full build.
#[test]
fn criterion_8_update_cost_ratio() {
    let _guard = SERIAL.lock().unwrap();
    let (data, _) = workload();
    let n = 256u32;
    let cfg = GridConfig::square(n).unwrap();
    let split = CARD * 9 / 10;
    let (bulk, tail) = data.split_at(split);

    let mut best_two = f64::INFINITY;
    let mut best_one = f64::INFINITY;
    let mut updated_two = None;
    for _round in 0..3 {
        let mut g2 = TwoLayerGrid::build(bulk, cfg, SortMode::None).unwrap();
        let start = Instant::now();
        for r in tail {
            g2.insert(*r).unwrap();
        }
        best_two = best_two.min(start.elapsed().as_secs_f64());
        updated_two = Some(g2);

        let mut g1 = OneLayerGrid::build(bulk, cfg, SortMode::None).unwrap();
        let start = Instant::now();
        for r in tail {
            g1.insert(*r).unwrap();
        }
        best_one = best_one.min(start.elapsed().as_secs_f64());
    }
    let ratio = best_two / best_one;
    eprintln!("insert of {} rects: 2-layer {best_two:.3}s, 1-layer {best_one:.3}s, ratio {ratio:.2}", tail.len());
    assert!(
        ratio <= 1.5,
        "two-layer incremental insert must stay within 1.5x of one-layer (got {ratio:.2}x)"
    );

    // Post-update queries must be indistinguishable from a full build.
    let full = TwoLayerGrid::build(&data, cfg, SortMode::None).unwrap();
    let updated = updated_two.unwrap();
    let windows = gen_windows(&data, 1000, REL_AREA, 44);
    let mut m = Metrics::default();
    for w in &windows {
        let a = id_checksum(window_query(&updated, w, &mut m));
        let b = id_checksum(window_query(&full, w, &mut m));
        assert_eq!(a, b, "updated grid answers differently from full build");
    }
    println!("ACCEPTANCE criterion 8 (update cost ratio {ratio:.2} <= 1.5, checksum equal): PASS");
}
