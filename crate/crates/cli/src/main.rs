//! `stokes-lattice`: singly periodic Stokes-flow singularity fields in a
//! no-slip channel or half-plane.
//!
//! Subcommands: `field` (grid sampling), `streamlines` (Runge–Kutta
//! tracing), `coeffs` (per-harmonic decay table), `verify` (validation
//! battery), `compare` (series vs transform-method oracle).
//!
//! Exit codes: `0` success, `1` configuration or usage error, `2` accuracy
//! or verification failure, `3` I/O error.

mod commands;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Classified command errors; the class fixes the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unusable configuration or arguments (exit 1).
    Config(String),
    /// A solution could not reach the requested accuracy (exit 2).
    Accuracy(String),
    /// Verification or comparison checks failed (exit 2).
    ChecksFailed(String),
    /// Reading or writing files failed (exit 3).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Accuracy(_) | CliError::ChecksFailed(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m)
            | CliError::Accuracy(m)
            | CliError::ChecksFailed(m)
            | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<stokes_lattice_core::Error> for CliError {
    fn from(e: stokes_lattice_core::Error) -> Self {
        match e {
            stokes_lattice_core::Error::AccuracyNotMet { .. } => CliError::Accuracy(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "stokes-lattice",
    version,
    about = "Singly periodic Stokes-flow singularity fields in a no-slip channel or half-plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample u, v, p/η, ω on a rectangular grid.
    Field(commands::FieldArgs),
    /// Trace streamlines from explicit seeds or an automatic interior grid.
    Streamlines(commands::StreamlinesArgs),
    /// Tabulate the combined per-harmonic boundary terms of a channel
    /// solution at an annulus probe point.
    Coeffs(commands::CoeffsArgs),
    /// Run the validation battery (no-slip, periodicity, PDE residuals,
    /// local forms, forcing cross-checks).
    Verify(commands::VerifyArgs),
    /// Compare the series solution against the independent transform-method
    /// oracle on an interior grid.
    Compare(commands::CompareArgs),
}

/// Applies `STOKES_LATTICE_THREADS` to the global worker pool
/// (`0` or unset = automatic).
fn init_threads() {
    if let Ok(raw) = std::env::var("STOKES_LATTICE_THREADS") {
        let text = raw.trim();
        match text.parse::<usize>() {
            Ok(0) => {}
            Ok(n) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            Err(_) if text.is_empty() => {}
            Err(_) => {
                eprintln!("warning: ignoring invalid STOKES_LATTICE_THREADS={raw:?}");
            }
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    init_threads();
    let result = match &cli.command {
        Command::Field(a) => commands::run_field(a),
        Command::Streamlines(a) => commands::run_streamlines(a),
        Command::Coeffs(a) => commands::run_coeffs(a),
        Command::Verify(a) => commands::run_verify(a),
        Command::Compare(a) => commands::run_compare(a),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
