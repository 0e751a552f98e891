//! `bellcal`: run the bench experiments from the command line and emit
//! machine-readable reports.
//!
//! Exit codes: 0 when the report passes, 1 when any check in the report
//! fails, 2 on usage errors (bad flags, malformed state specs, sample
//! counts below the statistical minimum).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::ExperimentReport;

/// A usage problem detected after flag parsing; reported like a clap error.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Canonical format, governed by schema/report.schema.json.
    Json,
    /// Flat projection: one row per record, fixed columns.
    Csv,
}

#[derive(Parser)]
#[command(
    name = "bellcal",
    version,
    about = "Simulator for a two-source polarization bench: Bell-analog synthesis, \
             CHSH scans, thermal-noise verification",
    propagate_version = true
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Interpret angle arguments as degrees. Reports always use radians.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a Bell-analog state; report amplitudes, Schmidt rank and
    /// the element-by-element trace.
    BellState(commands::bell_state::Args),
    /// Evaluate the CHSH sum at explicit analyzer settings, or search for
    /// the maximizing settings on an angle lattice.
    ChshScan(commands::chsh_scan::Args),
    /// Monte Carlo check that thermal-source correlations have the structure
    /// the synthesis relies on.
    ThermalVerify(commands::thermal_verify::Args),
    /// Randomized audit that product states never beat the classical CHSH
    /// bound.
    ProductBound(commands::product_bound::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let angle_scale = if cli.degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    };

    let report: Result<ExperimentReport, UsageError> = match &cli.command {
        Command::BellState(args) => Ok(commands::bell_state::run(args)),
        Command::ChshScan(args) => commands::chsh_scan::run(args, angle_scale),
        Command::ThermalVerify(args) => Ok(commands::thermal_verify::run(args)),
        Command::ProductBound(args) => Ok(commands::product_bound::run(args)),
    };
    let report = match report {
        Ok(report) => report,
        Err(usage) => {
            eprintln!("error: {usage}");
            return ExitCode::from(2);
        }
    };

    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if let Some(path) = &cli.out {
        if let Err(err) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    } else {
        print!("{rendered}");
    }

    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Shared helper: a parameters map from key/value pairs.
pub fn parameters(
    pairs: impl IntoIterator<Item = (&'static str, serde_json::Value)>,
) -> BTreeMap<String, serde_json::Value> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
