//! Sequential vs rayon-parallel execution of the two data-parallel hot
//! paths: batch window queries and the identical-grid join.
//!
//! Run with `cargo bench -p tlgrid`. The rayon pool defaults to all
//! cores; set `RAYON_NUM_THREADS` to pin it.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use tlgrid::dataio::{gen_windows, generate, GenSpec};
use tlgrid::grid::{GridConfig, SortMode, TwoLayerGrid};
use tlgrid::join::{join_identical_grids, join_identical_grids_par, JoinOpts};
use tlgrid::parallel::{run_batch_par, run_batch_seq};
use tlgrid::range::window_query;
use tlgrid::Metrics;

fn bench_batch_queries(c: &mut Criterion) {
    let data = generate(&GenSpec::uniform(200_000, 1e-8, 1));
    let grid = TwoLayerGrid::build(&data, GridConfig::square(140).unwrap(), SortMode::None)
        .expect("build");
    let windows = gen_windows(&data, 2_000, 0.1, 2);

    let mut group = c.benchmark_group("batch_window_queries");
    group.throughput(Throughput::Elements(windows.len() as u64));
    group.bench_with_input(BenchmarkId::new("seq", windows.len()), &windows, |b, ws| {
        b.iter(|| {
            let (out, _) = run_batch_seq(ws, |w, m| window_query(&grid, w, m));
            black_box(out)
        });
    });
    group.bench_with_input(BenchmarkId::new("par", windows.len()), &windows, |b, ws| {
        b.iter(|| {
            let (out, _) = run_batch_par(ws, |w, m| window_query(&grid, w, m));
            black_box(out)
        });
    });
    group.finish();
}

fn bench_join(c: &mut Criterion) {
    let rs = generate(&GenSpec::uniform(60_000, 1e-7, 3));
    let ss: Vec<_> = generate(&GenSpec::uniform(60_000, 1e-7, 4))
        .into_iter()
        .map(|mut r| {
            r.id += 1_000_000;
            r
        })
        .collect();
    let cfg = GridConfig::square(64).unwrap();
    let rg = TwoLayerGrid::build(&rs, cfg, SortMode::JoinReady).expect("build R");
    let sg = TwoLayerGrid::build(&ss, cfg, SortMode::JoinReady).expect("build S");

    let mut group = c.benchmark_group("identical_grid_join");
    group.sample_size(20);
    group.bench_function("seq", |b| {
        b.iter(|| {
            let mut m = Metrics::default();
            black_box(join_identical_grids(&rg, &sg, JoinOpts::AllOpts, &mut m).unwrap())
        });
    });
    group.bench_function("par", |b| {
        b.iter(|| {
            let mut m = Metrics::default();
            black_box(join_identical_grids_par(&rg, &sg, JoinOpts::AllOpts, &mut m).unwrap())
        });
    });
    group.finish();
}

criterion_group!(benches, bench_batch_queries, bench_join);
criterion_main!(benches);
