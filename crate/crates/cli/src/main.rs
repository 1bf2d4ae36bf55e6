//! `linkadmit` command-line front end.
//!
//! Exit status: 0 ok, 1 condition failed or infeasible, 2 usage or
//! structural error, 3 resource limit.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linkadmit::io::FormatError;
use linkadmit::{Limits, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "linkadmit",
    version,
    about = "Local admission tests, schedulers and exact fractional-coloring oracles for conflict graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add decimal approximations next to exact values (non-authoritative).
    #[arg(long, global = true)]
    pub approx: bool,
    /// Largest vertex set handed to independent-set or clique enumeration.
    #[arg(long, global = true, env = "LINKADMIT_LIMIT", default_value_t = Limits::default().max_vertices)]
    pub limit: usize,
    /// Largest number of maximal independent sets enumerated per program.
    #[arg(long, global = true, env = "LINKADMIT_MAX_SETS", default_value_t = Limits::default().max_sets)]
    pub max_sets: usize,
}

impl Global {
    pub fn limits(&self) -> Limits {
        Limits {
            max_vertices: self.limit,
            max_sets: self.max_sets,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a conflict graph, network or point set.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Write to a file instead of standard output.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run an admission test.
    Check(CheckArgs),
    /// Build a schedule for an instance passing a test.
    Schedule(ScheduleArgs),
    /// Validate an interval schedule against a graph and demands.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        demands: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Exact fractional-coloring computations.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Graph invariants and closed-form predictions.
    Invariant {
        #[command(subcommand)]
        query: InvariantQuery,
    },
    /// All worst-case ratios of a graph with their closed-form predictions.
    Beta {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sampled lower bound on the imperfection ratio.
    Imp(ImpArgs),
    /// Ratio table for a batch of graphs.
    Report {
        /// Graph files; each row is named by the file stem.
        #[arg(long, num_args = 1.., required_unless_present = "networks")]
        graphs: Vec<PathBuf>,
        /// Network files, reported through their line graphs.
        #[arg(long, num_args = 1..)]
        networks: Vec<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenFamily {
    /// Star with `d` leaves.
    Star {
        d: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Four vertices with all edges but one.
    K4e,
    Petersen,
    /// Center joined to disjoint cliques of the given sizes.
    T3 {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Line graph of a network file.
    Line {
        #[arg(long)]
        network: PathBuf,
    },
    /// Unit disk graph of a point file.
    Udg {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: Rational,
    },
    /// Seeded random graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample until connected.
        #[arg(long)]
        connected: bool,
    },
    /// Seeded random network (simple unless `--max-mult` exceeds 1).
    Network {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        max_mult: u64,
    },
    /// Seeded random points in a square.
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        side: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// row | row2 | row2d | degree | mixed | clique | clique-scaled=<preset or rational> | row-primary | clique-line | shannon
    #[arg(long)]
    pub condition: String,
    /// Conflict graph file.
    #[arg(long, required_unless_present = "network")]
    pub graph: Option<PathBuf>,
    /// Network file; graph tests run on its line graph.
    #[arg(long, conflicts_with = "graph")]
    pub network: Option<PathBuf>,
    #[arg(long)]
    pub demands: PathBuf,
    #[arg(long, default_value = "1")]
    pub horizon: Rational,
    /// Designated vertex for `row2d`.
    #[arg(long)]
    pub designated: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Row,
    Degree,
    Mixed,
    Row2,
    Row2d,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub demands: PathBuf,
    #[arg(long, default_value = "1")]
    pub horizon: Rational,
    /// Designated vertex for `row2d`.
    #[arg(long)]
    pub designated: Option<String>,
    /// Vertex order for `row` (comma separated; default input order).
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<String>>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ImpArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BetaKind {
    Row,
    Degree,
    Mixed,
    Row2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingKind {
    Row,
    Row2,
    Degree,
    Mixed,
    Clique,
}

#[derive(Debug, Subcommand)]
pub enum OracleQuery {
    /// Minimum schedule length with a certifying set-form schedule.
    ChiF {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        demands: PathBuf,
    },
    /// Whether the demands fit in the horizon.
    Feasible {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        demands: PathBuf,
        #[arg(long, default_value = "1")]
        horizon: Rational,
    },
    /// Largest clique demand.
    TClique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        demands: PathBuf,
    },
    /// Worst-case ratio of one test.
    Beta {
        #[arg(value_enum)]
        kind: BetaKind,
        #[arg(long)]
        graph: PathBuf,
    },
    Imp(ImpArgs),
    /// Sampled check that scaling a test by `beta` brackets the feasible region.
    Scaling {
        #[arg(long, value_enum)]
        condition: ScalingKind,
        #[arg(long)]
        beta: Rational,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum InvariantQuery {
    /// Induced star number with a witness star.
    Sigma {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Independence number.
    Alpha {
        #[arg(long)]
        graph: PathBuf,
    },
    MaxDegree {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Maximal cliques.
    Cliques {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Maximal cliques of a network's line graph, as link ids.
    LineCliques {
        #[arg(long)]
        network: PathBuf,
    },
    /// Fractional chromatic index upper bound of a multigraph.
    ChromaticIndexBound {
        #[arg(long)]
        network: PathBuf,
    },
    Connectivity {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Closed-form mixed ratio, when every neighborhood is a disjoint union of cliques.
    MixedPredicted {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Closed-form strengthened row ratio.
    Row2Predicted {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Largest closed-neighborhood demand.
    BBound {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        demands: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: String,
        #[source]
        source: FormatError,
    },
    #[error(transparent)]
    Core(#[from] linkadmit::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Core(e)
            | CliError::Format {
                source: FormatError::Invalid(e),
                ..
            } => match e {
                linkadmit::Error::ConditionFailed(_) => 1,
                linkadmit::Error::ResourceLimit { .. } => 3,
                _ => 2,
            },
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match result {
        Ok(Some(output)) => {
            let written = match (cli.global.format, &output.table) {
                (Format::Json, _) => output::write_json(&mut out, &output.json),
                (Format::Csv, Some(table)) => output::write_csv(&mut out, table),
                (Format::Csv, None) => {
                    eprintln!("error: this command has no CSV form");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = written.and_then(|_| out.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(output.status)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
