//! `whitham-lab` — command-line laboratory for Whitham-modulation
//! approximations of the defocusing cubic nonlinear Schrödinger equation.
//!
//! Exit codes: 0 when every stamped verdict passes, 1 when any fails (or a
//! run aborts), 2 on configuration errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Study;
use crate::config::{ConfigError, LabConfig, Overrides};

#[derive(Parser)]
#[command(
    name = "whitham-lab",
    version,
    about = "Numerical laboratory for Whitham-modulation approximations \
             of the defocusing cubic nonlinear Schrödinger equation",
    after_help = "Configuration comes from --config (strict TOML, unknown keys fatal); \
                  missing keys take the documented defaults, and flags override file keys. \
                  Each run writes one directory: report.json, manifest.json, table.csv, \
                  config snapshot, and plot-ready .dat series."
)]
struct Cli {
    /// Experiment configuration file (TOML); defaults apply when omitted
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override: hierarchy depth n
    #[arg(long, global = true, value_name = "INT")]
    n: Option<usize>,

    /// Override: ε ladder, comma-separated and decreasing (e.g. 0.2,0.1,0.05)
    #[arg(long, global = true, value_name = "LIST", value_delimiter = ',')]
    eps: Option<Vec<f64>>,

    /// Override: slow-time horizon T₀
    #[arg(long, global = true, value_name = "REAL", allow_negative_numbers = true)]
    t0: Option<f64>,

    /// Override: output directory (default runs/<command>-<hash prefix>)
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads for ladder rows (fallback: WHITHAM_LAB_THREADS)
    #[arg(long, global = true, value_name = "INT")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Integrate the slow modulation system and record its energy history
    Wme,
    /// Build the correction hierarchy and measure residuals (no wave solve)
    Hierarchy,
    /// One modulated wave solve at the largest ε, with the deviation series
    Nls,
    /// Full study: residuals and deviations across the ε ladder, slope fits
    Converge,
    /// Linearized wavetrain demo: invariant, secular growth, spectrum probe
    Stability,
    /// Classify hyperbolicity of the modulation system along each run
    Classify,
}

impl Command {
    fn study(self) -> Study {
        match self {
            Command::Wme => Study::Wme,
            Command::Hierarchy => Study::Hierarchy,
            Command::Nls => Study::Nls,
            Command::Converge => Study::Converge,
            Command::Stability => Study::Stability,
            Command::Classify => Study::Classify,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();

    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ConfigError> {
    let overrides = Overrides {
        n: cli.n,
        eps: cli.eps,
        t0: cli.t0,
        out: cli.out,
    };
    let cfg = LabConfig::resolve(cli.config.as_deref(), &overrides)?;

    if let Some(threads) = resolve_threads(cli.threads)? {
        if let Err(e) = whitham_harness::set_thread_count(threads) {
            log::warn!("could not size the worker pool: {e}");
        }
    }

    match commands::execute(cli.command.study(), &cfg) {
        Ok(criteria) => {
            if criteria.iter().all(|c| c.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Err(e) => {
            eprintln!("run failed: {e}");
            Ok(ExitCode::from(1))
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, ConfigError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("WHITHAM_LAB_THREADS") {
        Ok(value) => {
            let parsed = value.parse::<usize>().map_err(|e| {
                ConfigError(format!("WHITHAM_LAB_THREADS = {value:?} is not a thread count: {e}"))
            })?;
            Ok(Some(parsed))
        }
        Err(_) => Ok(None),
    }
}
