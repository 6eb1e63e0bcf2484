//! `gkp` — sweep driver for the cross-Kerr comb-preparation simulator.
//!
//! Every command is a deterministic function of its configuration: reruns
//! produce byte-identical files regardless of `--jobs`.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Failures are split by exit code: configuration problems (1) versus
/// numeric/tolerance failures from the simulation layer (2).
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numeric(String),
}

impl From<gkp_core::error::Error> for CliError {
    fn from(e: gkp_core::error::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "gkp",
    version,
    about = "Simulates heralded comb-state preparation via cross-Kerr coupling \
             and reports fidelity, acceptance, and baseline-comparison tables"
)]
struct Cli {
    /// TOML parameter file; omitted sections fall back to defaults that
    /// reproduce the published sweeps.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file (default: <command>.csv in the working directory).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override one config key, e.g. --override fig3.m=3 (repeatable; values
    /// are parsed as TOML literals).
    #[arg(long = "override", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Worker threads for sweeps (default: one per core). Does not affect
    /// output bytes.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity and outcome density vs homodyne outcome x, per squeezing level
    Fig3,
    /// Central fidelity vs forced displacement error delta
    Fig4,
    /// Success probability and mean fidelity vs acceptance window v_up
    Meanfid,
    /// Cross-validate the three independent state constructions
    OracleCheck {
        /// Negative control: evaluate the closed form with deliberately
        /// flipped per-peak orders; the check must then fail (exit 2).
        #[arg(long)]
        debug_wrong_hermite: bool,
    },
    /// Coherent-ancilla comparison scheme: comb spacings plus profile sidecar
    Baseline,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version land here too; those must exit 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = config::load(cli.config.as_deref(), &cli.overrides)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("cannot build thread pool: {e}")))?;
    let out = cli.out;
    let default_out = |name: &str| PathBuf::from(name);
    pool.install(|| match cli.command {
        Command::Fig3 => commands::fig3(&cfg, &out.unwrap_or_else(|| default_out("fig3.csv"))),
        Command::Fig4 => commands::fig4(&cfg, &out.unwrap_or_else(|| default_out("fig4.csv"))),
        Command::Meanfid => {
            commands::meanfid(&cfg, &out.unwrap_or_else(|| default_out("meanfid.csv")))
        }
        Command::OracleCheck { debug_wrong_hermite } => {
            commands::oracle_check(&cfg, out.as_deref(), debug_wrong_hermite)
        }
        Command::Baseline => {
            commands::baseline(&cfg, &out.unwrap_or_else(|| default_out("baseline.csv")))
        }
    })
}
