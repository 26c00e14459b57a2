//! `linforest`: exact induced-forest surveys from the command line.
//!
//! Exit codes: 0 ok, 2 input error, 3 incomplete (a solver hit its budget),
//! 4 mathematical finding (a bound or conjecture fails, or a construction
//! misses its claimed value), 5 internal assertion failure.

mod commands;
mod report;
mod rows;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linforest::Shape;

use crate::report::Format;

/// Per-graph node budget used when `--budget-nodes` is not given. Large
/// enough that every connected cubic graph up to order 14 solves exactly.
pub const DEFAULT_BUDGET_NODES: u64 = 50_000_000;

#[derive(Debug, Parser)]
#[command(name = "linforest", version, about = "Induced forests, linear forests and paths in small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Per-graph search-node budget (0 = unlimited).
    #[arg(long, default_value_t = DEFAULT_BUDGET_NODES)]
    pub budget_nodes: u64,
    /// Worker threads (default: one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; CSV or JSON Lines.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Keep complete rows already in `--out` and compute only the rest.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    #[value(alias = "a")]
    Forest,
    #[value(alias = "linear-forest")]
    Lif,
    #[value(alias = "induced-path")]
    Lip,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Forest => Shape::Forest,
            ShapeArg::Lif => Shape::LinearForest,
            ShapeArg::Lip => Shape::InducedPath,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one shape exactly on one graph (inline) or every graph in a file.
    Solve {
        /// graph6 string or edge list (lines separated by `/`).
        graph: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Extremes of a(G) and LIF(G) over connected cubic corpora, per order.
    TableCubic {
        /// Corpus files, or one directory holding `cubic_<n>.g6`.
        #[arg(long, default_value = "data/cubic")]
        input: Vec<PathBuf>,
        /// Orders, e.g. `4..=14`, `4-14`, `10` or `4,6,8`.
        #[arg(long, default_value = "4..=14")]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// g(n) = min LIF(G)/t(G) over connected graphs of order n.
    TableG {
        #[arg(long, default_value = "3..=8")]
        n: String,
        /// Corpora for orders above the built-in enumerator's range.
        #[arg(long)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep f(G) >= 2 over connected graphs with minimum degree 2.
    Conjecture {
        #[arg(long, default_value = "3..=8")]
        n: String,
        #[arg(long)]
        input: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a(G)+a(complement) and LIF(G)+LIF(complement) against n+4.
    NordhausGaddum {
        #[arg(long, default_value = "1..=7")]
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build and verify the minimum-order r-regular graphs with LIP r.
    Extremal {
        #[arg(long, default_value = "2..=8")]
        r: String,
        #[command(flatten)]
        common: Common,
    },
    /// Greedy linear-forest partition of given or random regular graphs.
    Greedy {
        graph: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Degree of random regular graphs to generate.
        #[arg(long)]
        r: Option<usize>,
        /// Orders of random regular graphs (cycled through).
        #[arg(long, default_value = "8..=20")]
        n: String,
        /// Number of random graphs.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the exact LIF and compare it with the bound.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write connected cubic corpora `cubic_<n>.g6` into a directory.
    GenCubic {
        #[arg(long, default_value = "4..=14")]
        n: String,
        #[arg(long, default_value = "data/cubic")]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Ordinary outcome of a command, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Incomplete,
    Finding,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Incomplete => 3,
            Status::Finding => 4,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

fn run(cli: Cli) -> Result<Status, Failure> {
    use commands::*;
    match cli.command {
        Command::Solve { graph, input, shape, common } => solve(graph, input, shape.into(), &common),
        Command::TableCubic { input, n, common } => table_cubic(&input, &n, &common),
        Command::TableG { n, input, common } => table_g(&n, &input, &common),
        Command::Conjecture { n, input, common } => conjecture(&n, &input, &common),
        Command::NordhausGaddum { n, common } => nordhaus_gaddum(&n, &common),
        Command::Extremal { r, common } => extremal(&r, &common),
        Command::Greedy {
            graph,
            input,
            r,
            n,
            count,
            seed,
            exact,
            common,
        } => greedy(
            GreedySource {
                graph,
                input,
                r,
                n,
                count,
                seed,
            },
            exact,
            &common,
        ),
        Command::GenCubic { n, out, jobs } => gen_cubic(&n, &out, jobs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("linforest: {e}");
            ExitCode::from(e.code())
        }
    }
}
