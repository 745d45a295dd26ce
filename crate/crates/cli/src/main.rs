mod commands;
mod config;
mod grid;
mod output;
mod units;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::Context;
use config::{load_constants, ConfigFile};
use output::{meta_path, sha256_hex, write_atomic, Failure, Meta, OrExit, Outcome, EXIT_CONFIG};

/// Gaussian frequency-interferometry and BEC detector calculations.
///
/// Exit codes: 0 ok, 2 configuration error (nothing written), 3 oracle disagreement,
/// 4 preset deviation beyond 10%, 5 constraint violation. With 3 and 4 the full CSV is still written.
#[derive(Parser, Debug)]
#[command(name = "gaussmeter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML configuration with one section per subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// CSV destination; a `.meta` sidecar is written next to it. Without it the CSV goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Named parameter set (figure4, optimality, li7-row1 … rb87-row2, all).
    #[arg(long, global = true)]
    preset: Option<String>,

    /// Tritter-angle grid `start:stop:count`; accepts `pi` tokens such as `pi/2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,

    /// Worker threads for sweeps. Output order never depends on it.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// QFI of the phase-shift, squeezing and mode-mixing channels over θ.
    QfiSweep,
    /// Number-sum F₀, QFI, their ratio and Δε.
    Sensitivity {
        /// Append number-difference (heterodyne) statistics.
        #[arg(long)]
        heterodyne: bool,
    },
    /// Detector table: densities, frequencies, Δε for both schemes and constraint margins.
    GwTable,
    /// Constraint checks for one detector design; exit 5 on violation.
    Validate,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::QfiSweep => "qfi-sweep",
            Self::Sensitivity { .. } => "sensitivity",
            Self::GwTable => "gw-table",
            Self::Validate => "validate",
        }
    }
}

fn hash_config<T: Serialize>(command: &str, resolved: &T) -> Result<String, Failure> {
    let body = toml::to_string(resolved).or_exit(EXIT_CONFIG)?;
    Ok(sha256_hex(
        format!("command = \"{command}\"\n{body}").as_bytes(),
    ))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let config_error = |msg: String| Failure {
        code: EXIT_CONFIG,
        error: anyhow!(msg),
    };
    if cli.parallel == 0 {
        return Err(config_error("--parallel must be at least 1".into()));
    }
    let name = cli.command.name();
    if cli.grid.is_some() && matches!(cli.command, Command::GwTable | Command::Validate) {
        return Err(config_error(format!("--grid is not used by {name}")));
    }
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p).or_exit(EXIT_CONFIG)?,
        None => ConfigFile::default(),
    };
    let ctx = Context {
        constants: load_constants().or_exit(EXIT_CONFIG)?,
        parallel: cli.parallel,
    };
    let preset = cli.preset.as_deref();
    let grid = cli.grid.as_deref();

    let (config_sha256, outcome): (String, Outcome) = match cli.command {
        Command::QfiSweep => {
            let cfg = file
                .qfi_sweep
                .unwrap_or_default()
                .resolve(preset, grid)
                .or_exit(EXIT_CONFIG)?;
            (
                hash_config(name, &cfg)?,
                commands::qfi_sweep::run(&cfg, &ctx)?,
            )
        }
        Command::Sensitivity { heterodyne } => {
            let cfg = file
                .sensitivity
                .unwrap_or_default()
                .resolve(preset, grid, heterodyne)
                .or_exit(EXIT_CONFIG)?;
            (
                hash_config(name, &cfg)?,
                commands::sensitivity::run(&cfg, &ctx)?,
            )
        }
        Command::GwTable => {
            let cfg = file
                .gw_table
                .unwrap_or_default()
                .resolve(preset)
                .or_exit(EXIT_CONFIG)?;
            (
                hash_config(name, &cfg)?,
                commands::gw_table::run(&cfg, &ctx)?,
            )
        }
        Command::Validate => {
            let cfg = file
                .validate
                .unwrap_or_default()
                .resolve(preset)
                .or_exit(EXIT_CONFIG)?;
            (
                hash_config(name, &cfg)?,
                commands::validate::run(&cfg, &ctx)?,
            )
        }
    };

    let csv = outcome.table.to_csv().or_exit(1)?;
    let meta = Meta {
        command: name,
        config_sha256,
        constants_version: ctx.constants.version,
        constants_sha256: sha256_hex(toml::to_string(&ctx.constants).or_exit(1)?.as_bytes()),
        rows: outcome.table.rows.len(),
        exit_code: outcome.code,
    };
    match &cli.out {
        Some(path) => {
            write_atomic(path, &csv).or_exit(1)?;
            write_atomic(&meta_path(path), meta.render().as_bytes()).or_exit(1)?;
            print!("{}", outcome.report);
        }
        None => {
            std::io::stdout().write_all(&csv).or_exit(1)?;
            eprint!("{}", outcome.report);
        }
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
