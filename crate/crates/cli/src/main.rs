//! Batch command-line frontend. Runs with `--seed` are fully reproducible:
//! byte-identical `.lhg`, JSON, and CSV outputs for identical invocations,
//! independent of `--jobs`. Exit codes: 0 on success, 1 on a domain error
//! (with a machine-readable JSON object on standard error), 2 on usage
//! errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypersat_core::cycles::enumerate_linear_cycles_limited;
use hypersat_core::cycles::EnumerationLimits;
use hypersat_core::generators::{gnp, partial_steiner, random_r_partite};
use hypersat_core::harness::{
    expectation_check, lemma_audit, supersat_sweep, AuditSuite, Family, DEFAULT_WORK_CAP,
};
use hypersat_core::hypergraph::{LinearHypergraph, VertexSet};
use hypersat_core::lemmas::{
    audit_rainbow_tree, build_rainbow_tree, cross_cut, decompose_almost_regular, split_vertices,
    UniformSetFamily, DEFAULT_CROSS_CUT_ROUNDS,
};
use hypersat_core::lhg::{read_lhg_file, write_lhg};
use hypersat_core::{Error, Seed};

/// Env var overriding the enumerator node cap.
const WORKCAP_ENV: &str = "HYPERSAT_WORKCAP";

#[derive(Parser)]
#[command(
    name = "hypersat",
    version,
    about = "Linear hypergraph toolkit: generators, exact linear-cycle counting, \
constructive tree and decomposition procedures, and a verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it in .lhg format
    Gen(GenArgs),
    /// Count linear 2k-cycles of an .lhg instance (JSON on stdout)
    Count(CountArgs),
    /// Build a rainbow rooted tree over a vertex split and audit it
    Tree(TreeArgs),
    /// Decompose a dense 2-graph into edge-disjoint almost-regular parts
    Decompose(DecomposeArgs),
    /// Split vertices into parts with per-part restricted-link floors
    Split(SplitArgs),
    /// Cross-cut a uniform set family against a vertex cover
    Crosscut(CrosscutArgs),
    /// Run a postcondition audit suite over seeded instances
    Verify(VerifyArgs),
    /// Sweep a density grid and fit the supersaturation constant
    Sweep(SweepArgs),
    /// Monte Carlo check of the closed-form even-cycle expectation
    Expect(ExpectArgs),
    /// Time the enumerator on reference instances
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFamily {
    /// Erdős–Rényi G(n, p)
    Gnp,
    /// Greedy maximal partial Steiner system
    Steiner,
    /// Random linear r-partite graph with an exact edge budget
    Rpartite,
    /// Edgeless graph
    Empty,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    /// Vertex count (gnp, steiner, empty)
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Uniformity (steiner)
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Edge probability (gnp)
    #[arg(long)]
    p: Option<f64>,
    /// Edge budget (rpartite)
    #[arg(long)]
    budget: Option<usize>,
    /// Comma-separated class sizes (rpartite); classes take contiguous id ranges
    #[arg(long, value_delimiter = ',')]
    classes: Vec<usize>,
    #[arg(long)]
    seed: u64,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Node-expansion cap; defaults to HYPERSAT_WORKCAP or 100000000
    #[arg(long)]
    work_cap: Option<u64>,
    /// Include elapsed_ms in the JSON (off by default to keep output
    /// byte-identical across runs)
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated class sizes giving the r-partition as contiguous id ranges
    #[arg(long, value_delimiter = ',')]
    classes: Vec<usize>,
    #[arg(long)]
    root: u32,
    #[arg(long)]
    height: usize,
    /// Number of split parts
    #[arg(long)]
    parts: usize,
    /// Per-part restricted-link floor for the split audit
    #[arg(long, default_value_t = 1)]
    floor: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    class_a: usize,
    #[arg(long, default_value_t = 1)]
    class_b: usize,
    #[arg(long, default_value_t = 100)]
    max_retries: usize,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
    #[arg(long, alias = "C")]
    c: f64,
    /// Override the part count p (the default formula value is far beyond
    /// desk scale, so everything lands in the base case without this)
    #[arg(long)]
    override_p: Option<u64>,
}

#[derive(Args)]
struct SplitArgs {
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated class sizes giving the r-partition as contiguous id ranges
    #[arg(long, value_delimiter = ',')]
    classes: Vec<usize>,
    #[arg(long)]
    parts: usize,
    #[arg(long)]
    floor: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    class_a: usize,
    #[arg(long, default_value_t = 1)]
    class_b: usize,
    #[arg(long, default_value_t = 100)]
    max_retries: usize,
}

#[derive(Args)]
struct CrosscutArgs {
    /// An .lhg file read as a u-uniform set family
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated cover vertices; defaults to the vertex union of a
    /// greedy maximal matching
    #[arg(long, value_delimiter = ',')]
    cover: Vec<u32>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CROSS_CUT_ROUNDS)]
    max_rounds: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: balanced_root, peel, decompose, cross_cut, split,
    /// rainbow_tree, path_bounds, oracle_equiv
    #[arg(long)]
    suite: String,
    #[arg(long)]
    instances: usize,
    #[arg(long)]
    seed: u64,
    /// Write the full JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFamily {
    Gnp,
    Steiner,
    Empty,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: SweepFamily,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    k: usize,
    /// Comma-separated grid values: probabilities (gnp) or edge budgets (steiner)
    #[arg(long, value_delimiter = ',')]
    grid: Vec<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Write one CSV row per trial here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the full JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    work_cap: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ExpectArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    work_cap: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("{}", error_json(&err));
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Count(args) => cmd_count(args),
        Command::Tree(args) => cmd_tree(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Split(args) => cmd_split(args),
        Command::Crosscut(args) => cmd_crosscut(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Expect(args) => cmd_expect(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn error_json(err: &Error) -> String {
    let kind = match err {
        Error::BadArity { .. } => "BadArity",
        Error::DuplicateEdge { .. } => "DuplicateEdge",
        Error::LinearityViolation { .. } => "LinearityViolation",
        Error::VertexOutOfRange(..) => "VertexOutOfRange",
        Error::UnknownVertex(..) => "UnknownVertex",
        Error::NoPartition => "NoPartition",
        Error::BadPartition(..) => "BadPartition",
        Error::EmptyGraph => "EmptyGraph",
        Error::BadParameter(..) => "BadParameter",
        Error::BudgetInfeasible { .. } => "BudgetInfeasible",
        Error::SizeGuard { .. } => "SizeGuard",
        Error::NotStronglyProper { .. } => "NotStronglyProper",
        Error::PreconditionViolated(..) => "PreconditionViolated",
        Error::DensityPrecondition { .. } => "DensityPrecondition",
        Error::RetriesExhausted { .. } => "RetriesExhausted",
        Error::NotAVertexCover(..) => "NotAVertexCover",
        Error::CrossCutStalled { .. } => "CrossCutStalled",
        Error::EmptyLevel { .. } => "EmptyLevel",
        Error::NoExtension(..) => "NoExtension",
        Error::WorkCapExceeded { .. } => "WorkCapExceeded",
        Error::Parse { .. } => "Parse",
        Error::Io(..) => "Io",
    };
    serde_json::json!({ "error": { "kind": kind, "message": err.to_string() } }).to_string()
}

fn resolve_work_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var(WORKCAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_WORK_CAP)
}

fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool builds")
            .install(f),
        None => f(),
    }
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(Error::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_partitioned(
    path: &std::path::Path,
    classes: &[usize],
) -> Result<LinearHypergraph, Error> {
    let g = read_lhg_file(path)?;
    if classes.is_empty() {
        return Err(Error::BadParameter(
            "--classes is required to attach the r-partition".into(),
        ));
    }
    let total: usize = classes.iter().sum();
    if total != g.id_bound() {
        return Err(Error::BadParameter(format!(
            "class sizes sum to {total}, expected {}",
            g.id_bound()
        )));
    }
    let mut ranges = Vec::with_capacity(classes.len());
    let mut start = 0u32;
    for &size in classes {
        ranges.push((start..start + size as u32).collect());
        start += size as u32;
    }
    g.with_partition(ranges)
}

fn cmd_gen(args: GenArgs) -> Result<(), Error> {
    let seed = Seed::new(args.seed);
    let g = match args.family {
        GenFamily::Gnp => {
            let p = args
                .p
                .ok_or_else(|| Error::BadParameter("gnp needs --p".into()))?;
            gnp(args.n, p, seed)?
        }
        GenFamily::Steiner => partial_steiner(args.n, args.r, seed)?,
        GenFamily::Empty => LinearHypergraph::build(2, args.n, &[])?,
        GenFamily::Rpartite => {
            let budget = args
                .budget
                .ok_or_else(|| Error::BadParameter("rpartite needs --budget".into()))?;
            if args.classes.is_empty() {
                return Err(Error::BadParameter("rpartite needs --classes".into()));
            }
            random_r_partite(&args.classes, budget, seed)?
        }
    };
    emit(args.out.as_ref(), &write_lhg(&g))
}

fn cmd_count(args: CountArgs) -> Result<(), Error> {
    let g = read_lhg_file(&args.input)?;
    let cap = resolve_work_cap(args.work_cap);
    let start = Instant::now();
    let (set, stats) = enumerate_linear_cycles_limited(
        &g,
        args.k,
        EnumerationLimits { node_cap: Some(cap) },
    )?;
    let mut json = serde_json::json!({
        "r": g.r(),
        "k": args.k,
        "copies": set.count(),
        "expansions": stats.expansions,
    });
    if args.timings {
        json["elapsed_ms"] = serde_json::json!(start.elapsed().as_millis() as u64);
    }
    println!("{json}");
    Ok(())
}

fn cmd_tree(args: TreeArgs) -> Result<(), Error> {
    let g = load_partitioned(&args.input, &args.classes)?;
    let split = split_vertices(
        &g,
        args.class_a,
        args.class_b,
        args.parts,
        args.floor,
        Seed::new(args.seed),
        args.max_retries,
    )?;
    let tree = build_rainbow_tree(&g, args.root, &split, args.height)?;
    let audit = audit_rainbow_tree(&g, &tree, &split);
    let levels: Vec<usize> = (0..=tree.height()).map(|d| tree.level(d).len()).collect();
    let json = serde_json::json!({
        "root": args.root,
        "height": tree.height(),
        "level_sizes": levels,
        "split_retries": split.retries_used,
        "audit": audit,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
    Ok(())
}

fn cmd_decompose(args: DecomposeArgs) -> Result<(), Error> {
    let g = read_lhg_file(&args.input)?;
    let result = decompose_almost_regular(&g, args.alpha, args.s, args.t, args.c, args.override_p)?;
    let json = serde_json::json!({
        "p": result.p,
        "q": result.q,
        "subgraphs": result.audits,
        "f_input": result.f_input,
        "f_sum": result.f_sum,
        "f_ratio_ok": result.f_ratio_ok,
        "edge_disjoint": result.edge_disjoint,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
    Ok(())
}

fn cmd_split(args: SplitArgs) -> Result<(), Error> {
    let g = load_partitioned(&args.input, &args.classes)?;
    let split = split_vertices(
        &g,
        args.class_a,
        args.class_b,
        args.parts,
        args.floor,
        Seed::new(args.seed),
        args.max_retries,
    )?;
    let part_sizes: Vec<usize> = split.parts.iter().map(|p| p.len()).collect();
    let worst_floor = split
        .link_sizes
        .values()
        .flat_map(|sizes| sizes.iter().copied())
        .min()
        .unwrap_or(0);
    let json = serde_json::json!({
        "parts": split.parts.len(),
        "part_sizes": part_sizes,
        "floor": split.floor,
        "worst_restricted_link": worst_floor,
        "retries_used": split.retries_used,
        "audit_ok": split.recheck(&g),
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
    Ok(())
}

fn cmd_crosscut(args: CrosscutArgs) -> Result<(), Error> {
    let g = read_lhg_file(&args.input)?;
    let sets: Vec<Vec<u32>> = g.edges().map(|e| e.to_vec()).collect();
    let family = UniformSetFamily::new(g.r(), sets)?;
    let cover: VertexSet = if args.cover.is_empty() {
        let mut matched = VertexSet::new();
        for set in family.sets() {
            if set.iter().all(|v| !matched.contains(v)) {
                matched.extend(set.iter().copied());
            }
        }
        matched
    } else {
        args.cover.iter().copied().collect()
    };
    let cut = cross_cut(&family, &cover, Seed::new(args.seed), args.max_rounds)?;
    let json = serde_json::json!({
        "uniformity": family.uniformity(),
        "sets": family.len(),
        "cover_size": cover.len(),
        "kept_vertices": cut.kept_vertices,
        "kept_sets": cut.kept_sets.len(),
        "threshold": cut.threshold,
        "rounds_used": cut.rounds_used,
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializes"));
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Error> {
    let suite = AuditSuite::from_name(&args.suite).ok_or_else(|| {
        Error::BadParameter(format!(
            "unknown suite `{}`; expected one of {}",
            args.suite,
            AuditSuite::ALL
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let report = with_jobs(args.jobs, || {
        lemma_audit(suite, args.instances, Seed::new(args.seed))
    })?;
    let audit = report.audit.clone().expect("audit reports carry a summary");
    println!("{}: {}/{}", audit.suite, audit.passes, audit.instances);
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json())?;
    }
    if audit.passes != audit.instances {
        let witness = audit
            .witness
            .map(|w| format!("instance {}: {}", w.instance, w.description))
            .unwrap_or_default();
        return Err(Error::PreconditionViolated(format!(
            "{} of {} instances failed ({witness})",
            audit.instances - audit.passes,
            audit.instances
        )));
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Error> {
    let family = match args.family {
        SweepFamily::Gnp => Family::Gnp { n: args.n },
        SweepFamily::Steiner => Family::SteinerSubsample {
            n: args.n,
            r: args.r,
        },
        SweepFamily::Empty => Family::Empty { n: args.n },
    };
    let cap = resolve_work_cap(args.work_cap);
    let report = with_jobs(args.jobs, || {
        supersat_sweep(
            &family,
            args.k,
            &args.grid,
            args.trials,
            Seed::new(args.seed),
            cap,
        )
    })?;
    for point in &report.grid {
        println!(
            "{}: mean {} ratio {}{}",
            point.label,
            point.mean_count,
            point
                .mean_ratio
                .map_or("-".to_string(), |r| r.to_string()),
            if point.work_capped { " (work-capped)" } else { "" },
        );
    }
    println!(
        "fitted_c {} non_decreasing {}",
        report.fitted_c.map_or("-".to_string(), |c| c.to_string()),
        report
            .means_non_decreasing
            .map_or("-".to_string(), |b| b.to_string()),
    );
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv())?;
    }
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(())
}

fn cmd_expect(args: ExpectArgs) -> Result<(), Error> {
    let cap = resolve_work_cap(args.work_cap);
    let report = with_jobs(args.jobs, || {
        expectation_check(
            args.n,
            args.p,
            args.k,
            args.trials,
            Seed::new(args.seed),
            cap,
        )
    })?;
    println!(
        "mean {} reference {} z {}",
        report.mean.unwrap_or(0.0),
        report.reference.unwrap_or(0.0),
        report.z_score.map_or("-".to_string(), |z| z.to_string()),
    );
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json())?;
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Error> {
    let seed = Seed::new(args.seed);
    println!("{:<34} {:>8} {:>10} {:>12} {:>10}", "instance", "edges", "copies", "expansions", "ms");
    let row = |name: &str, g: &LinearHypergraph, k: usize| -> Result<(), Error> {
        let start = Instant::now();
        let (set, stats) =
            enumerate_linear_cycles_limited(g, k, EnumerationLimits { node_cap: None })?;
        println!(
            "{:<34} {:>8} {:>10} {:>12} {:>10}",
            name,
            g.edge_count(),
            set.count(),
            stats.expansions,
            start.elapsed().as_millis(),
        );
        Ok(())
    };
    row("gnp(60, 0.15) k=2", &gnp(60, 0.15, seed.stream(0))?, 2)?;
    row("gnp(60, 0.15) k=3", &gnp(60, 0.15, seed.stream(0))?, 3)?;
    row("steiner(25, 3) k=2", &partial_steiner(25, 3, seed.stream(1))?, 2)?;
    row("steiner(40, 3) k=2", &partial_steiner(40, 3, seed.stream(2))?, 2)?;
    row(
        "rpartite(12,12,12; 100) k=2",
        &random_r_partite(&[12, 12, 12], 100, seed.stream(3))?,
        2,
    )?;
    Ok(())
}
