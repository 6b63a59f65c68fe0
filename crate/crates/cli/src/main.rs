//! Batch front end: sequence generation, simulation, optimization scans,
//! and controllability reports, with JSON/CSV artifacts.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod files;

use commands::ConfigOverrides;

#[derive(Parser)]
#[command(name = "isingprep", version, about = "GHZ and W preparation sequences for the all-to-all Ising model under global control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the exact GHZ sequence for n spins and print its fidelity.
    Ghz {
        #[arg(long)]
        n: usize,
        /// Sequence file to write (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest n simulated in the full 2^n space.
        #[arg(long, default_value_t = 14)]
        max_full: usize,
    },
    /// Generate a W-state sequence: closed form for n = 3, 4, optimized
    /// otherwise.
    W {
        #[arg(long)]
        n: usize,
        /// Sequence file to write (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optimizer configuration (JSON); flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        max_evals: Option<usize>,
        /// Largest n verified in the full 2^n space; beyond it the fidelity
        /// is computed in the symmetric subspace.
        #[arg(long, default_value_t = 14)]
        max_full: usize,
    },
    /// Apply a sequence file to |0...0> and print the fidelity with a target.
    Simulate {
        /// Sequence file (JSON).
        seq: PathBuf,
        /// "ghz", "w", or a path to a state file (JSON).
        #[arg(long)]
        target: String,
        /// Write the final state to this path (JSON).
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long, default_value_t = 14)]
        max_full: usize,
    },
    /// Minimum-parameter-count scan over a range of n, exported as CSV with
    /// a JSON fit sidecar.
    Scan {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// CSV output path; the sidecar is written next to it.
        #[arg(long)]
        out: PathBuf,
        /// Optimizer configuration (JSON); flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        max_evals: Option<usize>,
    },
    /// Connectivity and commutant report for every parity sector over a
    /// range of n.
    Controllability {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Report path (JSON array); stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<(), commands::CliError> {
    match command {
        Command::Ghz { n, out, max_full } => commands::cmd_ghz(n, out.as_deref(), max_full),
        Command::W { n, out, config, seed, restarts, threshold, max_evals, max_full } => {
            let overrides = ConfigOverrides { seed, restarts, threshold, max_evals };
            commands::cmd_w(n, out.as_deref(), config.as_deref(), &overrides, max_full)
        }
        Command::Simulate { seq, target, dump, max_full } => {
            commands::cmd_simulate(&seq, &target, dump.as_deref(), max_full)
        }
        Command::Scan { from, to, out, config, seed, restarts, threshold, max_evals } => {
            let overrides = ConfigOverrides { seed, restarts, threshold, max_evals };
            commands::cmd_scan(from, to, &out, config.as_deref(), &overrides)
        }
        Command::Controllability { from, to, out } => {
            commands::cmd_controllability(from, to, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
