//! Benchmark harness for the two-layer grid index and its baselines.
//!
//! Subcommands: `gen` (synthetic datasets), `range-bench` (window-query
//! throughput across indices), `update-bench` (bulk load + incremental
//! insert cost), `join-bench` (join strategy comparison). Reports are CSV
//! on stdout; diagnostics go to stderr; a cross-method result mismatch
//! exits non-zero before any timing is trusted.

mod report;

use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{validate_checksums, RunReport, HEADER};
use tlgrid::baseline::{one_layer_query, quadtree_query, OneLayerGrid, QuadTree, QuadTreeQueryMode};
use tlgrid::checksum::{id_checksum, pair_checksum};
use tlgrid::dataio::{gen_windows, generate, load_csv, write_csv, GenSpec, SpatialDistribution};
use tlgrid::grid::{suggest_granularity, GridConfig, SortMode, TwoLayerGrid};
use tlgrid::join::{
    build_temp_reduced, join_identical_grids, pbsm_one_layer_join, probe_join, reduced_join,
    transform_join, JoinOpts, JoinPair, ProbeStrategy, TransformVariant,
};
use tlgrid::parallel::run_batch;
use tlgrid::range::window_query;
use tlgrid::{Metrics, Rect, Window};

#[derive(Parser)]
#[command(name = "tlgrid", version, about = "Spatial index benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic rectangle dataset as CSV (id,xl,yl,xu,yu).
    Gen(GenArgs),
    /// Window-query throughput of the competing indices.
    RangeBench(RangeBenchArgs),
    /// Bulk-load 90% of a dataset, then time inserting the final 10%.
    UpdateBench(UpdateBenchArgs),
    /// Spatial intersection join strategies.
    JoinBench(JoinBenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    Zipf,
}

#[derive(Args)]
struct GenArgs {
    /// Number of rectangles.
    #[arg(long, default_value_t = 1_000_000)]
    card: usize,
    /// Area of every rectangle (0 generates points).
    #[arg(long, default_value_t = 1e-10)]
    area: f64,
    #[arg(long, value_enum, default_value_t = DistArg::Uniform)]
    dist: DistArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0.25)]
    ratio_min: f64,
    #[arg(long, default_value_t = 4.0)]
    ratio_max: f64,
    /// Output path.
    #[arg(short, long)]
    out: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IndexArg {
    #[value(name = "2layer")]
    TwoLayer,
    #[value(name = "1layer")]
    OneLayer,
    Quadtree,
    #[value(name = "quadtree2l")]
    Quadtree2L,
}

impl std::fmt::Display for IndexArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl IndexArg {
    fn name(self) -> &'static str {
        match self {
            IndexArg::TwoLayer => "2layer",
            IndexArg::OneLayer => "1layer",
            IndexArg::Quadtree => "quadtree",
            IndexArg::Quadtree2L => "quadtree2l",
        }
    }
}

#[derive(Args)]
struct CommonBenchArgs {
    /// Input dataset (CSV id,xl,yl,xu,yu; normalized on load).
    #[arg(long)]
    data: String,
    /// First line of the CSV is a header.
    #[arg(long, default_value_t = false)]
    header: bool,
    /// Tiles per dimension in x; granularity is derived from the
    /// dataset's average extents when omitted.
    #[arg(long)]
    nx: Option<u32>,
    /// Tiles per dimension in y (defaults to --nx).
    #[arg(long)]
    ny: Option<u32>,
    /// Worker threads; 1 means sequential. Defaults to TLGRID_THREADS or 1.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RangeBenchArgs {
    #[command(flatten)]
    common: CommonBenchArgs,
    /// Indices to run, comma separated.
    #[arg(long, value_delimiter = ',',
          default_values_t = [IndexArg::TwoLayer, IndexArg::OneLayer, IndexArg::Quadtree, IndexArg::Quadtree2L])]
    index: Vec<IndexArg>,
    /// Number of query windows.
    #[arg(long, default_value_t = 10_000)]
    queries: usize,
    /// Window area as a percentage of the domain.
    #[arg(long, default_value_t = 0.1)]
    rel_area: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sweep the grid granularity as lo:hi:step (grid indices only),
    /// one row group per granularity.
    #[arg(long)]
    sweep_granularity: Option<String>,
    /// Quad-tree leaf capacity.
    #[arg(long, default_value_t = 1000)]
    capacity: usize,
    /// Quad-tree maximum depth.
    #[arg(long, default_value_t = 12)]
    max_depth: u32,
}

#[derive(Args)]
struct UpdateBenchArgs {
    #[command(flatten)]
    common: CommonBenchArgs,
    #[arg(long, value_delimiter = ',',
          default_values_t = [IndexArg::TwoLayer, IndexArg::OneLayer])]
    index: Vec<IndexArg>,
    /// Windows used for the post-update consistency check.
    #[arg(long, default_value_t = 1000)]
    queries: usize,
    #[arg(long, default_value_t = 0.1)]
    rel_area: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    capacity: usize,
    #[arg(long, default_value_t = 12)]
    max_depth: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    MjBase,
    MjSansUnnecessary,
    MjSansRedundant,
    MjAllOpts,
    #[value(name = "pbsm-1layer")]
    Pbsm1Layer,
    TransformMaterialized,
    TransformOnTheFly,
    ProbeForLoop,
    ProbeGrid,
    NoIndexReduced,
}

impl StrategyArg {
    const ALL: [StrategyArg; 10] = [
        StrategyArg::MjBase,
        StrategyArg::MjSansUnnecessary,
        StrategyArg::MjSansRedundant,
        StrategyArg::MjAllOpts,
        StrategyArg::Pbsm1Layer,
        StrategyArg::TransformMaterialized,
        StrategyArg::TransformOnTheFly,
        StrategyArg::ProbeForLoop,
        StrategyArg::ProbeGrid,
        StrategyArg::NoIndexReduced,
    ];

    fn name(self) -> &'static str {
        match self {
            StrategyArg::MjBase => "mj-base",
            StrategyArg::MjSansUnnecessary => "mj-sans-unnecessary",
            StrategyArg::MjSansRedundant => "mj-sans-redundant",
            StrategyArg::MjAllOpts => "mj-all-opts",
            StrategyArg::Pbsm1Layer => "pbsm-1layer",
            StrategyArg::TransformMaterialized => "transform-materialized",
            StrategyArg::TransformOnTheFly => "transform-on-the-fly",
            StrategyArg::ProbeForLoop => "probe-for-loop",
            StrategyArg::ProbeGrid => "probe-grid",
            StrategyArg::NoIndexReduced => "no-index-reduced",
        }
    }
}

#[derive(Args)]
struct JoinBenchArgs {
    #[arg(long)]
    data_r: String,
    #[arg(long)]
    data_s: String,
    #[arg(long, default_value_t = false)]
    header: bool,
    /// Strategies to run (comma separated); "all" runs every one.
    #[arg(long, value_delimiter = ',')]
    strategy: Option<Vec<StrategyArg>>,
    /// Tiles per dimension for the identical-grid, probe and reduced
    /// paths; must be a power of two for the transform paths' fine grid.
    #[arg(long, default_value_t = 8)]
    nx: u32,
    /// Coarse tiles per dimension for the transform paths (power of two
    /// dividing --fine).
    #[arg(long, default_value_t = 4)]
    coarse: u32,
    /// Fine tiles per dimension for the transform paths.
    #[arg(long, default_value_t = 16)]
    fine: u32,
    /// Cell count per dimension for probe-grid.
    #[arg(long, default_value_t = 10)]
    probe_grid: u32,
    #[arg(long)]
    threads: Option<usize>,
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::RangeBench(args) => cmd_range_bench(args),
        Command::UpdateBench(args) => cmd_update_bench(args),
        Command::JoinBench(args) => cmd_join_bench(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(2);
    }
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("TLGRID_THREADS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

fn init_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    if threads > 1 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().ok();
        return true;
    }
    let _ = threads;
    false
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let spec = GenSpec {
        cardinality: args.card,
        area: args.area,
        distribution: match args.dist {
            DistArg::Uniform => SpatialDistribution::Uniform,
            DistArg::Zipf => SpatialDistribution::Zipf,
        },
        ratio_range: (args.ratio_min, args.ratio_max),
        seed: args.seed,
    };
    if !(spec.ratio_range.0 > 0.0 && spec.ratio_range.1 >= spec.ratio_range.0) {
        bail!("invalid aspect-ratio range");
    }
    let rects = generate(&spec);
    write_csv(&args.out, &rects).with_context(|| format!("writing {}", args.out))?;
    eprintln!("wrote {} rectangles to {}", rects.len(), args.out);
    Ok(())
}

fn resolve_grid(common: &CommonBenchArgs, avg_x: f64, avg_y: f64) -> Result<GridConfig> {
    if let Some(nx) = common.nx {
        let ny = common.ny.unwrap_or(nx);
        return Ok(GridConfig::new(nx, ny)?);
    }
    // Point datasets have zero average extent; fall back to a moderate
    // granularity instead of the cap.
    let cfg = suggest_granularity(avg_x.max(1e-4), avg_y.max(1e-4))?;
    Ok(cfg)
}

fn parse_sweep(spec: &str) -> Result<Vec<u32>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("--sweep-granularity expects lo:hi:step");
    }
    let lo: u32 = parts[0].parse()?;
    let hi: u32 = parts[1].parse()?;
    let step: u32 = parts[2].parse()?;
    if lo == 0 || hi < lo || step == 0 {
        bail!("invalid sweep range {spec}");
    }
    Ok((lo..=hi).step_by(step as usize).collect())
}

fn cmd_range_bench(args: RangeBenchArgs) -> Result<()> {
    let threads = thread_count(args.common.threads);
    let parallel = init_threads(threads);
    let (data, stats) =
        load_csv(&args.common.data, args.common.header).with_context(|| args.common.data.clone())?;
    let windows = gen_windows(&data, args.queries, args.rel_area, args.seed);
    let dataset = args.common.data.clone();

    let granularities = match &args.sweep_granularity {
        Some(spec) => {
            if args.index.iter().any(|i| matches!(i, IndexArg::Quadtree | IndexArg::Quadtree2L)) {
                bail!("--sweep-granularity applies to grid indices only");
            }
            parse_sweep(spec)?
        }
        None => {
            let cfg = resolve_grid(&args.common, stats.avg_x_extent, stats.avg_y_extent)?;
            vec![cfg.nx()]
        }
    };

    println!("{HEADER}");
    for n in granularities {
        let cfg = match (args.common.nx, args.sweep_granularity.is_some()) {
            (Some(_), false) => {
                GridConfig::new(args.common.nx.unwrap(), args.common.ny.or(args.common.nx).unwrap())?
            }
            _ => GridConfig::square(n)?,
        };
        let mut rows = Vec::new();
        for index in &args.index {
            rows.push(run_range_method(*index, &data, &windows, cfg, &args, &dataset, parallel)?);
        }
        validate_checksums(&rows)?;
        for row in &rows {
            row.emit();
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_range_method(
    index: IndexArg,
    data: &[Rect],
    windows: &[Window],
    cfg: GridConfig,
    args: &RangeBenchArgs,
    dataset: &str,
    parallel: bool,
) -> Result<RunReport> {
    // Untimed warmup so no method pays thread-pool spinup and cold pages
    // alone; the parallel pool needs a full-length pass to reach steady
    // state on small machines.
    fn timed_batch<F: Fn(&Window, &mut Metrics) -> Vec<u64> + Sync>(
        windows: &[Window],
        parallel: bool,
        f: F,
    ) -> (f64, Vec<Vec<u64>>, Metrics) {
        let warm = if parallel { windows.len() } else { windows.len().min(200) };
        let _ = run_batch(&windows[..warm], &f, parallel);
        let t = Instant::now();
        let (ids, metrics) = run_batch(windows, &f, parallel);
        (t.elapsed().as_secs_f64(), ids, metrics)
    }

    let (build_s, exec_s, ids, metrics, nx, ny, replicas);
    match index {
        IndexArg::TwoLayer => {
            let t0 = Instant::now();
            let g = TwoLayerGrid::build(data, cfg, SortMode::None)?;
            build_s = t0.elapsed().as_secs_f64();
            (exec_s, ids, metrics) = timed_batch(windows, parallel, |w, m| window_query(&g, w, m));
            (nx, ny) = (cfg.nx(), cfg.ny());
            replicas = g.replica_count();
        }
        IndexArg::OneLayer => {
            let t0 = Instant::now();
            let g = OneLayerGrid::build(data, cfg, SortMode::None)?;
            build_s = t0.elapsed().as_secs_f64();
            (exec_s, ids, metrics) =
                timed_batch(windows, parallel, |w, m| one_layer_query(&g, w, m));
            (nx, ny) = (cfg.nx(), cfg.ny());
            replicas = g.replica_count();
        }
        IndexArg::Quadtree | IndexArg::Quadtree2L => {
            let mode = if index == IndexArg::Quadtree {
                QuadTreeQueryMode::RefPoint
            } else {
                QuadTreeQueryMode::TwoLayer
            };
            let t0 = Instant::now();
            let g = QuadTree::build(data, args.capacity, args.max_depth);
            build_s = t0.elapsed().as_secs_f64();
            (exec_s, ids, metrics) =
                timed_batch(windows, parallel, |w, m| quadtree_query(&g, w, mode, m));
            (nx, ny) = (0, 0);
            replicas = g.replica_count();
        }
    }
    Ok(RunReport {
        command: "range-bench",
        method: index.name().to_string(),
        dataset: dataset.to_string(),
        nx,
        ny,
        build_s,
        sort_s: 0.0,
        exec_s,
        ops: windows.len() as u64,
        metrics,
        replicas,
        result_count: count(&ids),
        checksum: checksum(&ids),
    })
}

fn count(ids: &[Vec<u64>]) -> u64 {
    ids.iter().map(|v| v.len() as u64).sum()
}

fn checksum(ids: &[Vec<u64>]) -> u64 {
    ids.iter().fold(0u64, |acc, v| acc.wrapping_add(id_checksum(v.iter().copied())))
}

fn cmd_update_bench(args: UpdateBenchArgs) -> Result<()> {
    let threads = thread_count(args.common.threads);
    init_threads(threads);
    let (data, stats) =
        load_csv(&args.common.data, args.common.header).with_context(|| args.common.data.clone())?;
    let cfg = resolve_grid(&args.common, stats.avg_x_extent, stats.avg_y_extent)?;
    let split = data.len() * 9 / 10;
    let (bulk, tail) = data.split_at(split);
    let windows = gen_windows(&data, args.queries, args.rel_area, args.seed);

    println!("{HEADER}");
    let mut rows = Vec::new();
    for index in &args.index {
        let row = match index {
            IndexArg::TwoLayer => {
                let t0 = Instant::now();
                let mut g = TwoLayerGrid::build(bulk, cfg, SortMode::None)?;
                let build_s = t0.elapsed().as_secs_f64();
                let t1 = Instant::now();
                for r in tail {
                    g.insert(*r)?;
                }
                let exec_s = t1.elapsed().as_secs_f64();
                let replicas = g.replica_count();
                let (ids, m) = tlgrid::parallel::run_batch_seq(&windows, |w, m| window_query(&g, w, m));
                make_update_row("2layer", &args, cfg, build_s, exec_s, tail.len(), m, replicas, &ids)
            }
            IndexArg::OneLayer => {
                let t0 = Instant::now();
                let mut g = OneLayerGrid::build(bulk, cfg, SortMode::None)?;
                let build_s = t0.elapsed().as_secs_f64();
                let t1 = Instant::now();
                for r in tail {
                    g.insert(*r)?;
                }
                let exec_s = t1.elapsed().as_secs_f64();
                let replicas = g.replica_count();
                let (ids, m) =
                    tlgrid::parallel::run_batch_seq(&windows, |w, m| one_layer_query(&g, w, m));
                make_update_row("1layer", &args, cfg, build_s, exec_s, tail.len(), m, replicas, &ids)
            }
            IndexArg::Quadtree | IndexArg::Quadtree2L => {
                let mode = if *index == IndexArg::Quadtree {
                    QuadTreeQueryMode::RefPoint
                } else {
                    QuadTreeQueryMode::TwoLayer
                };
                let t0 = Instant::now();
                let mut g = QuadTree::build(bulk, args.capacity, args.max_depth);
                let build_s = t0.elapsed().as_secs_f64();
                let t1 = Instant::now();
                for r in tail {
                    g.insert(*r);
                }
                let exec_s = t1.elapsed().as_secs_f64();
                let replicas = g.replica_count();
                let (ids, m) = tlgrid::parallel::run_batch_seq(&windows, |w, m| {
                    quadtree_query(&g, w, mode, m)
                });
                make_update_row(index.name(), &args, cfg, build_s, exec_s, tail.len(), m, replicas, &ids)
            }
        };
        rows.push(row);
    }
    // Post-update results must agree with a full build of the reference
    // index, and across indices.
    let full = TwoLayerGrid::build(&data, cfg, SortMode::None)?;
    let (full_ids, _) = tlgrid::parallel::run_batch_seq(&windows, |w, m| window_query(&full, w, m));
    let full_sum = checksum(&full_ids);
    for row in &rows {
        if row.checksum != full_sum {
            bail!(
                "post-update checksum {:016x} of {} differs from full build {:016x}",
                row.checksum,
                row.method,
                full_sum
            );
        }
    }
    for row in &rows {
        row.emit();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn make_update_row(
    method: &str,
    args: &UpdateBenchArgs,
    cfg: GridConfig,
    build_s: f64,
    exec_s: f64,
    inserted: usize,
    metrics: Metrics,
    replicas: u64,
    ids: &[Vec<u64>],
) -> RunReport {
    RunReport {
        command: "update-bench",
        method: method.to_string(),
        dataset: args.common.data.clone(),
        nx: cfg.nx(),
        ny: cfg.ny(),
        build_s,
        sort_s: 0.0,
        exec_s,
        ops: inserted as u64,
        metrics,
        replicas,
        result_count: count(ids),
        checksum: checksum(ids),
    }
}

fn cmd_join_bench(args: JoinBenchArgs) -> Result<()> {
    let threads = thread_count(args.threads);
    let parallel = init_threads(threads);
    let (rs, _) = load_csv(&args.data_r, args.header).with_context(|| args.data_r.clone())?;
    let (ss, _) = load_csv(&args.data_s, args.header).with_context(|| args.data_s.clone())?;
    let dataset = format!("{}|{}", args.data_r, args.data_s);
    let strategies = args.strategy.clone().unwrap_or_else(|| StrategyArg::ALL.to_vec());

    println!("{HEADER}");
    let mut rows = Vec::new();
    for strategy in strategies {
        rows.push(run_join_strategy(strategy, &rs, &ss, &args, &dataset, parallel)?);
    }
    validate_checksums(&rows)?;
    for row in &rows {
        row.emit();
    }
    Ok(())
}

fn run_join_strategy(
    strategy: StrategyArg,
    rs: &[Rect],
    ss: &[Rect],
    args: &JoinBenchArgs,
    dataset: &str,
    parallel: bool,
) -> Result<RunReport> {
    let cfg = GridConfig::square(args.nx)?;
    let mut m = Metrics::default();
    let build_s;
    let mut sort_s = 0.0;
    let t_exec;
    let pairs: Vec<JoinPair>;
    let replicas: u64;
    match strategy {
        StrategyArg::MjBase
        | StrategyArg::MjSansUnnecessary
        | StrategyArg::MjSansRedundant
        | StrategyArg::MjAllOpts => {
            let opts = match strategy {
                StrategyArg::MjBase => JoinOpts::Base,
                StrategyArg::MjSansUnnecessary => JoinOpts::SansUnnecessary,
                StrategyArg::MjSansRedundant => JoinOpts::SansRedundant,
                _ => JoinOpts::AllOpts,
            };
            let t0 = Instant::now();
            let mut rg = TwoLayerGrid::build(rs, cfg, SortMode::None)?;
            let mut sg = TwoLayerGrid::build(ss, cfg, SortMode::None)?;
            build_s = t0.elapsed().as_secs_f64();
            let t1 = Instant::now();
            rg.sort_join_ready();
            sg.sort_join_ready();
            sort_s = t1.elapsed().as_secs_f64();
            let t2 = Instant::now();
            pairs = join_grids(&rg, &sg, opts, parallel, &mut m)?;
            t_exec = t2.elapsed().as_secs_f64();
            replicas = rg.replica_count() + sg.replica_count();
        }
        StrategyArg::Pbsm1Layer => {
            let t0 = Instant::now();
            let rg = OneLayerGrid::build(rs, cfg, SortMode::None)?;
            let sg = OneLayerGrid::build(ss, cfg, SortMode::None)?;
            build_s = t0.elapsed().as_secs_f64();
            let t1 = Instant::now();
            let (mut rg, mut sg) = (rg, sg);
            rg.sort_by_xl();
            sg.sort_by_xl();
            sort_s = t1.elapsed().as_secs_f64();
            let t2 = Instant::now();
            pairs = pbsm_one_layer_join(&rg, &sg, &mut m)?;
            t_exec = t2.elapsed().as_secs_f64();
            replicas = rg.replica_count() + sg.replica_count();
        }
        StrategyArg::TransformMaterialized | StrategyArg::TransformOnTheFly => {
            let variant = if strategy == StrategyArg::TransformMaterialized {
                TransformVariant::Materialized
            } else {
                TransformVariant::OnTheFly
            };
            let t0 = Instant::now();
            let rg = TwoLayerGrid::build(rs, GridConfig::square(args.coarse)?, SortMode::JoinReady)?;
            let sg = TwoLayerGrid::build(ss, GridConfig::square(args.fine)?, SortMode::JoinReady)?;
            build_s = t0.elapsed().as_secs_f64();
            let t2 = Instant::now();
            pairs = transform_join(&rg, &sg, variant, JoinOpts::AllOpts, &mut m)?;
            t_exec = t2.elapsed().as_secs_f64();
            replicas = rg.replica_count() + sg.replica_count();
        }
        StrategyArg::ProbeForLoop | StrategyArg::ProbeGrid => {
            let t0 = Instant::now();
            let sg = TwoLayerGrid::build(ss, cfg, SortMode::None)?;
            build_s = t0.elapsed().as_secs_f64();
            let probe = if strategy == StrategyArg::ProbeForLoop {
                ProbeStrategy::ForLoop
            } else {
                ProbeStrategy::CoarseGrid(args.probe_grid)
            };
            let t2 = Instant::now();
            pairs = probe_join(rs, &sg, probe, &mut m);
            t_exec = t2.elapsed().as_secs_f64();
            replicas = sg.replica_count();
        }
        StrategyArg::NoIndexReduced => {
            let t0 = Instant::now();
            let rg = build_temp_reduced(rs, cfg)?;
            let sg = build_temp_reduced(ss, cfg)?;
            build_s = t0.elapsed().as_secs_f64();
            let t2 = Instant::now();
            pairs = reduced_join(&rg, &sg, &mut m)?;
            t_exec = t2.elapsed().as_secs_f64();
            replicas = rg.replica_count() + sg.replica_count();
        }
    }
    let (nx, ny) = match strategy {
        StrategyArg::TransformMaterialized | StrategyArg::TransformOnTheFly => {
            (args.coarse, args.fine)
        }
        _ => (cfg.nx(), cfg.ny()),
    };
    Ok(RunReport {
        command: "join-bench",
        method: strategy.name().to_string(),
        dataset: dataset.to_string(),
        nx,
        ny,
        build_s,
        sort_s,
        exec_s: t_exec,
        ops: pairs.len() as u64,
        metrics: m,
        replicas,
        result_count: pairs.len() as u64,
        checksum: pair_checksum(&pairs),
    })
}

fn join_grids(
    rg: &TwoLayerGrid,
    sg: &TwoLayerGrid,
    opts: JoinOpts,
    parallel: bool,
    m: &mut Metrics,
) -> Result<Vec<JoinPair>> {
    #[cfg(feature = "parallel")]
    if parallel {
        return Ok(tlgrid::join::join_identical_grids_par(rg, sg, opts, m)?);
    }
    let _ = parallel;
    Ok(join_identical_grids(rg, sg, opts, m)?)
}
