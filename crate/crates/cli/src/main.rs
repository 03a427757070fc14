use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use wl_lab::gdwl::DistanceKind;
use wl_lab::{AlgorithmSpec, Graph};

mod commands;
mod report;

use report::Format;

#[derive(Parser)]
#[command(name = "wl-lab", version, about = "Weisfeiler-Lehman refinement experiments on edge-list graphs")]
struct Cli {
    /// Print a JSON report
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Print tab-separated rows with a header line
    #[arg(long, global = true)]
    tsv: bool,
    /// Worker threads, 0 for one per core
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock times to the report; output then differs between runs
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run algorithms on a pair of graphs
    Compare(CompareArgs),
    /// Check catalog claims and optionally sweep the hierarchy over random pairs
    Matrix(MatrixArgs),
    /// Furer graph construction
    #[command(subcommand)]
    Furer(FurerCommand),
    /// Search for a base graph whose augmented pair separates two algorithms
    Search(SearchArgs),
    /// Exact distance matrix as reduced fractions
    Distances(DistancesArgs),
    /// Pebble games
    #[command(subcommand)]
    Pebble(PebbleCommand),
    /// Print the JSON schema of the reports
    Schema,
}

fn parse_alg(s: &str) -> Result<AlgorithmSpec, String> {
    s.parse().map_err(|e: wl_lab::Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<DistanceKind, String> {
    s.parse().map_err(|e: wl_lab::Error| e.to_string())
}

#[derive(Args)]
pub struct CompareArgs {
    /// Algorithm name or `custom:`/`gdwl:` specification; repeatable
    #[arg(long = "alg", value_parser = parse_alg)]
    algs: Vec<AlgorithmSpec>,
    /// Aggregation scheme for a custom subgraph WL, e.g. `lu,lv`
    #[arg(long)]
    agg: Option<String>,
    /// Pooling order for `--agg`: vs or sv
    #[arg(long, requires = "agg")]
    pool: Option<String>,
    /// Subgraph policy for `--agg`, e.g. nm, de, ego:2
    #[arg(long, requires = "agg")]
    policy: Option<String>,
    /// Stop after this many refinement rounds
    #[arg(long)]
    max_rounds: Option<usize>,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args)]
pub struct MatrixArgs {
    /// Catalog JSON file; the shipped catalog when omitted
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Also sweep every hierarchy relation over this many random pairs
    #[arg(long, default_value_t = 0)]
    also_random: usize,
}

#[derive(Subcommand)]
enum FurerCommand {
    /// Print the Furer graph of a base graph as an edge list
    Build(FurerBuildArgs),
}

#[derive(Args)]
pub struct FurerBuildArgs {
    /// Base graph edge list
    #[arg(long)]
    base: PathBuf,
    /// 1-based index of a base edge to twist, in edge-list order; repeatable
    #[arg(long = "twist")]
    twists: Vec<usize>,
    /// Attach the vertex-identifying chains
    #[arg(long)]
    augment: bool,
}

#[derive(Args)]
pub struct SearchArgs {
    /// Algorithm that must not distinguish the pair
    #[arg(long, value_parser = parse_alg)]
    weak: AlgorithmSpec,
    /// Algorithm that must distinguish the pair
    #[arg(long, value_parser = parse_alg)]
    strong: AlgorithmSpec,
    /// Largest base graph tried
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Number of random bases tried
    #[arg(long, default_value_t = 200)]
    budget: usize,
}

#[derive(Args)]
pub struct DistancesArgs {
    /// spd, htd or rd
    #[arg(long, value_parser = parse_kind)]
    kind: DistanceKind,
    graph: PathBuf,
}

#[derive(Subcommand)]
enum PebbleCommand {
    /// Solve the game of one algorithm on two graphs
    Solve(PebbleSolveArgs),
    /// Compare game winners with refinement verdicts on all small pairs
    Verify(PebbleVerifyArgs),
}

#[derive(Args)]
pub struct PebbleSolveArgs {
    #[arg(long, value_parser = parse_alg)]
    alg: AlgorithmSpec,
    g: PathBuf,
    h: PathBuf,
}

#[derive(Args)]
pub struct PebbleVerifyArgs {
    /// Games to check; the six named games when omitted
    #[arg(long = "alg", value_parser = parse_alg)]
    algs: Vec<AlgorithmSpec>,
    /// All pairs of connected graphs up to this many vertices
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Random equal-size pairs added one vertex above `--max-n`
    #[arg(long, default_value_t = 0)]
    extra: usize,
}

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unusable input; exit code 2.
    Input(String),
    /// Broken internal invariant; exit code 3.
    Internal(String),
}

impl From<wl_lab::Error> for Failure {
    fn from(e: wl_lab::Error) -> Failure {
        match e {
            wl_lab::Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse_edge_list(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let format = if cli.json {
        Format::Json
    } else if cli.tsv {
        Format::Tsv
    } else {
        Format::Text
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure::Internal(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut report = pool.install(|| match &cli.command {
        Command::Compare(a) => commands::compare(a, cli.timings),
        Command::Matrix(a) => commands::matrix(a, cli.seed),
        Command::Furer(FurerCommand::Build(a)) => commands::furer_build(a),
        Command::Search(a) => commands::search(a, cli.seed),
        Command::Distances(a) => commands::distances(a),
        Command::Pebble(PebbleCommand::Solve(a)) => commands::pebble_solve(a),
        Command::Pebble(PebbleCommand::Verify(a)) => commands::pebble_verify(a, cli.seed),
        Command::Schema => Ok(report::Report::Schema),
    })?;
    if cli.timings {
        report.set_wall_ms(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report.render(format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("wl-lab: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("wl-lab: internal error: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
