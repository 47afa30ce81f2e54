//! `popdiff`: constructions, representation tables, bounds and exhaustive checks for
//! popular differences.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 precondition failure, 3 check failure,
//! 4 cap exceeded.

mod args;
mod commands;
mod construct;
mod error;
mod sweep;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use popdiff::oracle::DEFAULT_ORACLE_CAP;

use crate::args::ParamArgs;
use crate::error::exit;

#[derive(Parser, Debug)]
#[command(name = "popdiff", version, about = "Popular differences in dense sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a set with a certificate.
    Construct {
        #[command(subcommand)]
        kind: construct::Kind,
    },
    /// Print the representation table of a set file as CSV.
    Eval {
        file: PathBuf,
        /// Window `1 <= d < D`.
        #[arg(long, conflicts_with = "full", required_unless_present = "full")]
        d: Option<usize>,
        /// Every nonzero difference.
        #[arg(long)]
        full: bool,
        /// Cross-check against the quadratic reference path.
        #[arg(long)]
        certified: bool,
    },
    /// Closed-form bounds as JSON.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exact `f_D(N, alpha)` by exhaustive search.
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run the verification suite and write one CSV row per check.
    Verify {
        /// The standard suite.
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        default: bool,
        /// Suite configuration as JSON.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        oracle_cap: Option<u64>,
        /// Negative control: also count the difference D itself.
        #[arg(long)]
        inclusive_window: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Bounds, construction maxima and exact values over a parameter grid, as CSV.
    Sweep {
        /// List or range of N, e.g. `100,200` or `100:1000:100`.
        #[arg(long)]
        n: String,
        /// List of densities, e.g. `1/20,1/10`.
        #[arg(long)]
        alpha: String,
        /// List or range of D.
        #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
        d: Option<String>,
        /// List or range of gamma, e.g. `0:4:0.5`.
        #[arg(long)]
        gamma: Option<String>,
        /// Exact values are computed for N up to this cap.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Leave out the integer construction column.
        #[arg(long)]
        skip_integer: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> error::CliResult {
    match command {
        Command::Construct { kind } => construct::run(&kind),
        Command::Eval { file, d, full, certified } => commands::eval(&file, d, full, certified),
        Command::Bounds { params } => commands::bounds(&params),
        Command::Oracle { params, cap, jobs } => commands::oracle(&params, cap, jobs),
        Command::Verify { default, config, seed, jobs, oracle_cap, inclusive_window, csv } => {
            commands::verify(&commands::VerifyArgs { default, config, seed, jobs, oracle_cap, inclusive_window, csv })
        }
        Command::Sweep { n, alpha, d, gamma, oracle_cap, jobs, skip_integer, out } => {
            sweep::run(&sweep::SweepArgs { n, alpha, d, gamma, oracle_cap, jobs, skip_integer, out })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
