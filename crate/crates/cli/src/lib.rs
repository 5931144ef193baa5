//! Argument definitions and the subcommand runners behind the `cxdim` binary.
//! Every runner returns an [`Output`]: a JSON value wrapped in a versioned
//! envelope, a CSV projection, and the overall pass flag that picks the exit
//! code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cxdim_core::DefiningGraph;

pub mod commands;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "cxdim", version, about = "Conformal dimension bounds and their certificates for large-type Coxeter groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for grid and census work; output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Either a graph file or a uniform graph on `m` vertices with label `M`.
#[derive(Clone, Debug, Default, Args)]
pub struct GraphArgs {
    /// Defining graph file: `m=<int>`, then `uniform=<M>` or one `i j m_ij` line per pair.
    #[arg(long, conflicts_with_all = ["m", "big_m"])]
    pub graph: Option<PathBuf>,
    /// Number of generators of a uniform graph.
    #[arg(long, requires = "big_m")]
    pub m: Option<usize>,
    /// Label of every edge of the uniform graph.
    #[arg(long = "M", id = "big_m", requires = "m")]
    pub big_m: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower and upper conformal dimension bounds with every intermediate constant.
    Bounds {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1.5)]
        y0: f64,
        /// Constants with (`thm`) or without (`cor`) the extra `m - 2` term.
        #[arg(long, default_value = "thm")]
        variant: String,
        /// Also tabulate every m up to this value.
        #[arg(long)]
        m_max: Option<usize>,
        /// Also tabulate every M up to this value.
        #[arg(long = "M-max")]
        big_m_max: Option<u32>,
    },
    /// Build the round tree and audit its inductive hypotheses.
    RoundTree {
        #[command(flatten)]
        graph: GraphArgs,
        /// Vertical branching; defaults to floor((m - 5) / 3).
        #[arg(long = "V")]
        v: Option<usize>,
        #[arg(long, default_value_t = 3)]
        stages: usize,
        /// Inject a fault before auditing.
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
    },
    /// Link conditions at cap vertices and the flag-complex certificate.
    Links {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1.5)]
        y0: f64,
    },
    /// Polygon censuses checked against their closed-form bounds.
    Census {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = CensusKind::Shells)]
        kind: CensusKind,
        /// Base polygon type for shell censuses, 1-based; `all` runs every pair.
        #[arg(long, default_value = "1,2")]
        pair: String,
        /// Triangle group labels `p,q,r` for the triangle census.
        #[arg(long, default_value = "3,3,4")]
        triple: String,
        /// Ball radius for the triangle census.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Largest distance for the flat hexagon census.
        #[arg(long, default_value_t = 4)]
        ell: u32,
        /// Put a polygon adjacent to the base into S_2 to exercise the audit.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Thresholds on the horoball height for the three cap cases.
    Y0 {
        #[arg(long, default_value_t = 1.5)]
        y0: f64,
    },
    /// Export a ball of the Davis complex, optionally checking the geodesic criterion.
    Ball {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, default_value_t = 10_000_000)]
        cap: usize,
        /// Random vertex pairs on which to compare the wall criterion with BFS.
        #[arg(long, default_value_t = 0)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    Relabel,
    Delete,
    Share,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusKind {
    Shells,
    Triangle,
    Flat,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

impl GraphArgs {
    pub fn resolve(&self) -> Result<DefiningGraph> {
        match (&self.graph, self.m, self.big_m) {
            (Some(path), None, None) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                DefiningGraph::parse(&text).map_err(CliError::usage)
            }
            (None, Some(m), Some(big)) => DefiningGraph::uniform(m, big).map_err(CliError::usage),
            _ => Err(CliError::Usage("give either --graph FILE or both --m and --M".into())),
        }
    }
}

pub struct Output {
    pub command: &'static str,
    pub pass: bool,
    pub result: Value,
    pub csv: String,
}

impl Output {
    pub fn new(command: &'static str, pass: bool, result: impl Serialize, csv: String) -> Self {
        let result = serde_json::to_value(result).expect("reports serialize");
        Self { command, pass, result, csv }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "pass": self.pass,
                    "result": self.result,
                });
                serde_json::to_string_pretty(&v).unwrap() + "\n"
            }
            Format::Csv => self.csv.clone(),
        }
    }
}

/// Flat rows to CSV text with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).unwrap()
}

pub fn run(cli: &Cli) -> Result<Output> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build().map_err(CliError::usage)?;
    pool.install(|| match &cli.command {
        Command::Bounds { graph, y0, variant, m_max, big_m_max } => commands::bounds(graph, *y0, variant, *m_max, *big_m_max),
        Command::RoundTree { graph, v, stages, mutate } => commands::round_tree(graph, *v, *stages, *mutate),
        Command::Links { graph, y0 } => commands::links(graph, *y0),
        Command::Census { graph, kind, pair, triple, k, ell, inject_fault } => {
            commands::census(graph, *kind, pair, triple, *k, *ell, *inject_fault)
        }
        Command::Y0 { y0 } => commands::y0(*y0),
        Command::Ball { graph, radius, cap, pairs, seed } => commands::ball(graph, *radius, *cap, *pairs, *seed),
    })
}

/// Runs the command and writes its output; returns the process exit code.
pub fn main_with(cli: &Cli) -> i32 {
    let out = match run(cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = out.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {}", CliError::Io(e));
        return 2;
    }
    if out.pass {
        0
    } else {
        1
    }
}
