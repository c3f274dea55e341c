//! `turansep`: command-line front end.
//!
//! Exit codes: 0 success or property holds, 1 property violated (witness in
//! the report), 2 invalid input, 3 search budget exhausted.

mod commands;
mod report;

use std::ffi::OsString;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use turansep_core::exact::DEFAULT_BUDGET;

use crate::commands::{execute, Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "turansep", version, about = "Hypergraph Turán density separation toolkit")]
pub struct Cli {
    /// Print the report as JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, env = "TURANSEP_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Node budget for exact searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Add wall-clock time to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

/// Family arguments accept `K:l,k`, `K-:l,k`, `D:t,k`, `S6` or a path to a
/// hypergraph file.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a named family as a hypergraph file.
    Build { family: String },
    /// Search for a copy of PATTERN in HOST.
    Contains { host: String, pattern: String },
    /// Check that HOST has no copy of PATTERN.
    FreeCheck { host: String, pattern: String },
    /// Exact Turán number ex(N, PATTERN).
    Turan { n: usize, pattern: String },
    /// Condition 1 for the pair (F, F').
    Condition1 { host: String, sub: String },
    /// Condition 2 for the pair (F, F').
    Condition2 { host: String, sub: String },
    /// Both conditions and the resulting verdict.
    Separate { host: String, sub: String },
    /// Build one of the lower-bound constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Density polynomial of the six-part construction and its constrained maximum.
    Densopt,
    /// Monte-Carlo check of the expected number of crossing edges.
    Crossing {
        host: String,
        #[arg(long)]
        t0: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// Iterated blow-up of S6 on N vertices.
    S6star { n: usize },
    /// The bipartite 3-graph G on 2N vertices.
    BipartiteG { n: usize },
    /// Six-part construction with sizes s1 = s2, s3, s4 = s5, s6.
    SixPart {
        #[arg(num_args = 6, required = true)]
        sizes: Vec<usize>,
    },
    /// Single-level blow-up of BASE with one class size per base vertex.
    Blowup {
        base: String,
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    /// Add one missing triple inside each block of a 5-set matching.
    Augment {
        host: String,
        /// Blocks as `a,b,c,d,e;f,g,h,i,j`; default consecutive blocks.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Random maximal PATTERN-free graph on N vertices (uses --seed).
    MaximalFree { n: usize, pattern: String },
}

fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let result = match with_pool(cli.threads, || execute(&cli)) {
        Ok(r) => r,
        Err(msg) => Err(Failure::Input(msg)),
    };
    match result {
        Ok(Output { mut report, graph }) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            let code = report.status.exit_code();
            if cli.json {
                print!("{}", report.to_json());
            } else if let Some(g) = graph {
                print!("{}{}", report.to_text("# "), g.to_text());
            } else {
                print!("{}", report.to_text(""));
            }
            code
        }
        Err(f) => {
            eprintln!("turansep: {f}");
            f.exit_code()
        }
    }
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, String> {
    match threads {
        Some(0) => Err("--threads must be at least 1".into()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| format!("cannot start thread pool: {e}"))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, String> {
    if threads == Some(0) {
        return Err("--threads must be at least 1".into());
    }
    Ok(f())
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
