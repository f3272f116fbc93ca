//! `dflx`: run drift-flux simulations, regularization cascades and audits.
//!
//! Exit codes: 0 success, 1 i/o failure, 2 solver failure (vacuum, blow-up),
//! 3 invalid configuration.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Scenario;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "dflx", version, about = "Pseudo-spectral drift-flux simulator and compactness diagnostics")]
struct Cli {
    /// Scenario file (TOML). Missing keys take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; the DFLX_OUT environment variable takes precedence.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Seed for random initial data, overriding the config.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (advisory).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single stage: time series and snapshots.
    Simulate,
    /// Every stage of the cascade plus a convergence summary.
    Cascade,
    /// Fit the growth constants of the configured pressure law.
    CheckPressure,
    /// Kernel norms and L_{h,p} values over the configured h-list.
    KernelStudy,
    /// Recompute diagnostics from stored snapshots.
    Diagnose {
        /// Directory of `.dflx` snapshots [default: <out>/snapshots].
        #[arg(long)]
        snapshots: Option<PathBuf>,
    },
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut sc = match &cli.config {
        Some(p) => Scenario::load(p)?,
        None => Scenario::default(),
    };
    if let Some(seed) = cli.seed {
        sc.initial.seed = seed;
    }
    sc.validate()?;
    if let Some(n) = cli.threads {
        // A pool may already exist (e.g. in tests); the hint is then ignored.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = std::env::var_os("DFLX_OUT").map(PathBuf::from).unwrap_or(cli.out);
    match cli.command {
        Command::Simulate => commands::simulate(&sc, &out),
        Command::Cascade => commands::cascade(&sc, &out),
        Command::CheckPressure => commands::check_pressure(&sc, &out),
        Command::KernelStudy => commands::kernel_study(&sc, &out),
        Command::Diagnose { snapshots } => {
            let dir = snapshots.unwrap_or_else(|| out.join("snapshots"));
            commands::diagnose(&sc, &dir, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
