use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use loose_ramsey::bounds::bound_table;
use loose_ramsey::coloring::{generate_coloring, TableColoring};
use loose_ramsey::finder::{self, Mode};
use loose_ramsey::io::{parse_witness, write_coloring, write_witness};
use loose_ramsey::oracle::{self, OracleVerdict};
use loose_ramsey::reduction;
use loose_ramsey::selfcheck;
use loose_ramsey::{Coloring, ColoringSpec, Error, LoosePath, Params, StandardColoring};

#[derive(Parser)]
#[command(name = "loose-ramsey", version, about = "Monochromatic loose paths in colored complete hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the threshold table for (k, l, r)
    Bounds(ShapeArgs),
    /// Write a coloring file
    Gen(GenArgs),
    /// Find a monochromatic path and verify it
    Run(RunArgs),
    /// Check a witness file against a coloring
    Verify(VerifyArgs),
    /// Exhaustive search, or exact small Ramsey verification
    Oracle(OracleArgs),
    /// Run many seeds and emit CSV of queries against the budget
    Bench(BenchArgs),
    /// Run the invariant suites
    Selfcheck(SelfcheckArgs),
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(short = 'k', long = "k")]
    k: usize,
    #[arg(short = 'l', long = "ell")]
    ell: usize,
    #[arg(short = 'r', long = "r")]
    r: usize,
}

#[derive(Args)]
struct InstanceArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(short = 'n', long = "n")]
    n: usize,
}

impl InstanceArgs {
    fn params(&self) -> loose_ramsey::Result<Params> {
        Params::new(self.shape.k, self.shape.ell, self.shape.r, self.n)
    }
}

#[derive(Args)]
struct GenArgs {
    /// constant:<c>, seed:<u64>, star:<center>,<inner>,<outer> or file:<path>
    #[arg(long)]
    coloring: ColoringSpec,
    #[arg(short = 'k', long = "k")]
    k: usize,
    #[arg(short = 'r', long = "r")]
    r: usize,
    #[arg(short = 'n', long = "n")]
    n: usize,
    /// Store every edge color instead of the rule
    #[arg(long)]
    table: bool,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Dfs,
    Reduction,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Dfs => "dfs",
            Method::Reduction => "reduction",
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    coloring: ColoringSpec,
    #[arg(long, value_enum, default_value_t = Method::Dfs)]
    method: Method,
    /// Refuse instances below the guaranteed threshold (default)
    #[arg(long, conflicts_with = "permissive")]
    strict: bool,
    /// Run below the threshold; a shortfall is reported, not an error
    #[arg(long)]
    permissive: bool,
    /// Write the witness file here
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Write a JSON report here
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    coloring: ColoringSpec,
    #[arg(long)]
    witness: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Coloring to search; omit with --ramsey
    #[arg(long, required_unless_present = "ramsey")]
    coloring: Option<ColoringSpec>,
    /// Check that every coloring of K_n contains the path and some coloring of K_{n-1} does not
    #[arg(long)]
    ramsey: bool,
    #[arg(long, default_value_t = oracle::DEFAULT_NODE_GUARD)]
    node_guard: u64,
    #[arg(long, default_value_t = oracle::DEFAULT_COLORING_GUARD)]
    coloring_guard: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Method::Dfs)]
    method: Method,
    /// Number of seeds
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    /// Worker threads (defaults to available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(short = 'o', long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Smaller parameter ranges
    #[arg(long)]
    quick: bool,
}

/// Everything `run` reports. Only `wall_ms` varies between identical runs.
#[derive(Serialize)]
struct RunReport {
    k: usize,
    ell: usize,
    r: usize,
    n: usize,
    method: Method,
    strict: bool,
    color: u16,
    witness: Vec<u32>,
    queries: u64,
    budget: u64,
    rounds: usize,
    stuck_events: u64,
    verified: bool,
    verdict: String,
    wall_ms: f64,
}

impl RunReport {
    fn print(&self) {
        println!("params k={} l={} r={} n={}", self.k, self.ell, self.r, self.n);
        println!("method {} ({})", self.method.name(), if self.strict { "strict" } else { "permissive" });
        println!("color {}", self.color);
        let seq: Vec<String> = self.witness.iter().map(|v| v.to_string()).collect();
        println!("witness {}", seq.join(" "));
        println!("queries {} budget {}", self.queries, self.budget);
        println!("rounds {} stuck {}", self.rounds, self.stuck_events);
        println!("verified {} {}", self.verified, self.verdict);
        println!("wall_ms {:.3}", self.wall_ms);
    }
}

/// A found path plus the counters the report needs.
struct Found {
    color: u16,
    path: LoosePath,
    queries: u64,
    budget: u64,
    rounds: usize,
    stuck: u64,
}

fn solve<C: Coloring + ?Sized>(coloring: &C, params: Params, method: Method, mode: Mode) -> loose_ramsey::Result<Found> {
    match method {
        Method::Dfs => {
            let res = finder::find_monochromatic_path(coloring, params, mode)?;
            Ok(Found {
                color: res.color,
                path: res.path,
                queries: res.stats.queries,
                budget: finder::query_budget(&params),
                rounds: res.stats.rounds_run,
                stuck: res.stats.stuck_events.iter().sum(),
            })
        }
        Method::Reduction => {
            let res = reduction::find_via_reduction(coloring, params)?;
            Ok(Found {
                color: res.color,
                path: res.path,
                queries: res.stats.queries,
                budget: res.stats.budget,
                rounds: res.stats.stages.len() + 1,
                stuck: 0,
            })
        }
    }
}

fn cmd_bounds(args: &ShapeArgs) -> anyhow::Result<ExitCode> {
    let shape = loose_ramsey::Shape::new(args.k, args.ell, args.r);
    let table = bound_table(&shape);
    if table.entries.is_empty() {
        bail!(Error::InvalidParams(format!("no bound applies to k={} l={} r={}", args.k, args.ell, args.r)));
    }
    print!("{table}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: &GenArgs) -> anyhow::Result<ExitCode> {
    // the path length plays no part in a coloring
    let params = Params::new(args.k, 1, args.r, args.n)?;
    let mut coloring = generate_coloring(&args.coloring, &params)?;
    if args.table {
        coloring = StandardColoring::Table(TableColoring::materialize(&coloring, args.k, args.n)?);
    }
    let text = write_coloring(args.k, args.n, &coloring);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let params = args.instance.params()?;
    let coloring = generate_coloring(&args.coloring, &params)?;
    let mode = if args.permissive { Mode::Permissive } else { Mode::Strict };
    let start = Instant::now();
    let found = solve(&coloring, params, args.method, mode)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let check = oracle::verify_witness(&coloring, &found.path, found.color, &params);
    let report = RunReport {
        k: params.k,
        ell: params.ell,
        r: params.r,
        n: params.n,
        method: args.method,
        strict: mode == Mode::Strict,
        color: found.color,
        witness: found.path.sequence().to_vec(),
        queries: found.queries,
        budget: found.budget,
        rounds: found.rounds,
        stuck_events: found.stuck,
        verified: check.is_ok(),
        verdict: match &check {
            Ok(()) => "ok".into(),
            Err(defect) => defect.to_string(),
        },
        wall_ms,
    };
    report.print();
    if let Some(path) = &args.witness {
        fs::write(path, write_witness(&params, found.color, &found.path))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.json {
        fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(&args.witness).with_context(|| format!("reading {}", args.witness.display()))?;
    let file = parse_witness(&text)?;
    let coloring = generate_coloring(&args.coloring, &file.params)?;
    match oracle::verify_witness(&coloring, &file.path, file.color, &file.params) {
        Ok(()) => {
            println!("valid: color {} loose path with {} edges", file.color, file.params.ell);
            Ok(ExitCode::SUCCESS)
        }
        Err(defect) => {
            println!("invalid: {defect}");
            Ok(ExitCode::from(1))
        }
    }
}

fn print_ramsey(k: usize, ell: usize, n: usize, report: &oracle::SmallRamseyReport) {
    if report.holds() {
        println!("n={n}: all {} colorings contain P_{ell}^({k})", report.colorings);
    } else {
        println!("n={n}: coloring {} contains no P_{ell}^({k})", report.colorings);
    }
}

fn cmd_oracle(args: &OracleArgs) -> anyhow::Result<ExitCode> {
    let params = args.instance.params()?;
    let Params { k, ell, r, n } = params;
    if args.ramsey {
        let here = oracle::small_ramsey_report(k, ell, r, n, args.coloring_guard)?;
        print_ramsey(k, ell, n, &here);
        if !here.holds() {
            return Ok(ExitCode::SUCCESS);
        }
        if n > k {
            let below = oracle::small_ramsey_report(k, ell, r, n - 1, args.coloring_guard)?;
            print_ramsey(k, ell, n - 1, &below);
            if !below.holds() {
                println!("R(P_{ell}^({k});{r}) = {n}");
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let spec = args.coloring.as_ref().context("--coloring is required")?;
    let coloring = generate_coloring(spec, &params)?;
    let verdict = oracle::exhaustive_mono_path_search_with(&coloring, &params, args.node_guard)?;
    println!("{verdict}");
    if let OracleVerdict::Found { color, path, .. } = &verdict {
        if let Err(defect) = oracle::verify_witness(&coloring, path, *color, &params) {
            println!("witness rejected: {defect}");
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Clone, Debug)]
struct BenchRow {
    seed: u64,
    color: u16,
    queries: u64,
    budget: u64,
    ok: bool,
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<ExitCode> {
    let params = args.instance.params()?;
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
        .max(1);
    let next = AtomicU64::new(args.first_seed);
    let end = args.first_seed + args.seeds;
    let rows = Mutex::new(Vec::new());
    let failure = Mutex::new(None::<String>);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let seed = next.fetch_add(1, Ordering::Relaxed);
                if seed >= end {
                    break;
                }
                let coloring = StandardColoring::SeededRandom { r: params.r, seed };
                let row = match solve(&coloring, params, args.method, Mode::Strict) {
                    Ok(found) => BenchRow {
                        seed,
                        color: found.color,
                        queries: found.queries,
                        budget: found.budget,
                        ok: found.queries <= found.budget
                            && oracle::verify_witness(&coloring, &found.path, found.color, &params).is_ok(),
                    },
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(format!("seed {seed}: {e}"));
                        BenchRow {
                            seed,
                            color: 0,
                            queries: 0,
                            budget: 0,
                            ok: false,
                        }
                    }
                };
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|row| row.seed);
    let mut csv = String::from("k,l,r,n,seed,method,color,queries,budget,ok\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            params.k,
            params.ell,
            params.r,
            params.n,
            row.seed,
            args.method.name(),
            row.color,
            row.queries,
            row.budget,
            row.ok
        ));
    }
    match &args.out {
        Some(path) => fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{csv}"),
    }
    if let Some(msg) = failure.into_inner().unwrap() {
        eprintln!("error: {msg}");
    }
    Ok(if rows.iter().all(|row| row.ok) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_selfcheck(args: &SelfcheckArgs) -> anyhow::Result<ExitCode> {
    let outcomes = selfcheck::run_all(args.quick);
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} ({} ms): {}", o.name, o.millis, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} checks, {failed} failed", outcomes.len());
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Bad input maps to 2, everything else (failed checks, broken invariants,
/// I/O) to 1.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidParams(_)
            | Error::Parse(_)
            | Error::OutOfRange { .. }
            | Error::BelowThreshold { .. }
            | Error::TooLarge(_)
            | Error::MalformedEdge(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Selfcheck(a) => cmd_selfcheck(a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
