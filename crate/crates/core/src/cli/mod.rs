//! Command-line front end.
//!
//! Each subcommand reads an optional JSON config, applies flag overrides and
//! writes its results into the output directory. Every file records the fully
//! resolved config and seed.

mod commands;
pub mod config;
mod output;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{CodeConfig, ConductanceConfig, GateConfig, ModesConfig, NanowireConfig, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "floquet-majorana", version, about = "Floquet Majorana wire simulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration file; defaults are used when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write SVG plots where available.
    #[arg(long, global = true)]
    pub svg: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Winding numbers along the drive ratio m.
    Sweep,
    /// Zero and π edge modes of an open chain.
    Modes,
    /// Syndrome table, code validation and poisoning Monte Carlo.
    Code,
    /// All outcome branches of the measurement-only phase gate.
    Gate,
    /// Spinful nanowire projection onto an effective Kitaev chain.
    Nanowire,
    /// Parity-dependent conductance and stabilizer readout.
    Conductance,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

/// Runs one subcommand and returns the lines to print on stdout.
pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    std::fs::create_dir_all(&cli.out).map_err(|e| CliError::io(&cli.out, e))?;
    let text = match &cli.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let ctx = commands::Context { out: cli.out.clone(), seed: cli.seed, svg: cli.svg };
    match cli.command {
        Command::Sweep => commands::sweep(&ctx, config::load(text.as_deref())?),
        Command::Modes => commands::modes(&ctx, config::load(text.as_deref())?),
        Command::Code => commands::code(&ctx, config::load(text.as_deref())?),
        Command::Gate => commands::gate(&ctx, config::load(text.as_deref())?),
        Command::Nanowire => commands::nanowire(&ctx, config::load(text.as_deref())?),
        Command::Conductance => commands::conductance(&ctx, config::load(text.as_deref())?),
    }
}
