//! Command-line front end for the `umbral` and `umbral-sim` crates.
//!
//! Exit codes: 0 success, 1 internal failure, 2 bad arguments, 3 a
//! simulation z-score above the threshold, 4 a failed verification.

pub mod gen;
pub mod params;
pub mod record;
pub mod sim;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use umbral::UmbralError;
use umbral_sim::SimError;

pub use record::{Metadata, OutputRecord, Term};
pub use verify::{Check, Suite, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STATISTICAL: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Optional cap on the partition / Stirling memo tables.
pub const MEMO_CAP_VAR: &str = "UMBRAL_MEMO_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(msg: String) -> CliError {
        CliError::Usage(msg)
    }

    pub fn internal(msg: String) -> CliError {
        CliError::Internal(msg)
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<UmbralError> for CliError {
    fn from(e: UmbralError) -> CliError {
        CliError::Internal(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> CliError {
        match e {
            SimError::InvalidParameter(m) => CliError::Usage(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Exact time-space harmonic polynomials for Lévy processes")]
pub struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit one polynomial of a family.
    Gen(gen::GenArgs),
    /// Check identities exactly up to a degree.
    Verify(VerifyArgs),
    /// Compare simulated moments and martingale residuals with the symbolic values.
    Sim(sim::SimArgs),
    /// Emit a whole table of polynomials.
    Tables(gen::TablesArgs),
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
}

/// What to print and the exit code.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let done = |stdout: String| Outcome { stdout, code: EXIT_OK };
    match &cli.command {
        Command::Gen(args) => gen::cmd_gen(args).map(done),
        Command::Tables(args) => gen::cmd_tables(args).map(done),
        Command::Verify(args) => {
            let report = verify::run_suite(args.suite, args.max_degree)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome { stdout: record::to_json(&report)?, code })
        }
        Command::Sim(args) => {
            let (stdout, ok) = sim::cmd_sim(args)?;
            Ok(Outcome { stdout, code: if ok { EXIT_OK } else { EXIT_STATISTICAL } })
        }
    }
}

/// Applies [`MEMO_CAP_VAR`] if set.
pub fn apply_memo_cap(value: Option<&str>) -> Result<(), CliError> {
    if let Some(v) = value {
        let cap = v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("{MEMO_CAP_VAR} must be a nonnegative integer, got `{v}`")))?;
        umbral::combinatorics::set_memo_cap(cap);
    }
    Ok(())
}
