//! Command line front end: parameter sweeps to CSV, Monte Carlo validation
//! of the closed forms, and optimal harvesting-time tables.
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration or I/O
//! error, 3 numeric failure.

use std::io::Write;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

mod config;
mod sweep;

use config::{CliError, Estimator, SweepSpec};

#[derive(Parser)]
#[command(name = "wpcn", version, about = "Wireless-powered network throughput toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured sweep and emit CSV.
    Sweep {
        /// JSON sweep configuration.
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a companion gnuplot script next to the output file.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Compare the exact curves against the simulator on the configured
    /// grid; fails when any point disagrees by more than 4 standard errors.
    Validate {
        /// JSON sweep configuration; must select the exact and monte_carlo
        /// estimators.
        config: PathBuf,
    },
    /// Emit the closed-form and searched optimal harvesting time over the
    /// configured grid.
    OptimalTau {
        /// JSON sweep configuration; the estimator selection is replaced by
        /// the two optimal-tau estimators.
        config: PathBuf,
    },
}

fn main() {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    process::exit(code);
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sweep {
            config,
            output,
            gnuplot,
        } => {
            let spec = SweepSpec::load(&config)?;
            if gnuplot && output.is_none() {
                return Err(CliError::Config(
                    "--gnuplot needs -o so the script has a data file to reference".into(),
                ));
            }
            let csv = sweep::run_sweep(&spec)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &csv)
                        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                    if gnuplot {
                        let script_path = path.with_extension("gp");
                        let csv_name = path
                            .file_name()
                            .map(|n| n.to_string_lossy().into_owned())
                            .unwrap_or_else(|| path.display().to_string());
                        std::fs::write(&script_path, sweep::gnuplot_script(&spec, &csv_name))
                            .map_err(|e| {
                                CliError::Config(format!("{}: {e}", script_path.display()))
                            })?;
                    }
                }
                None => {
                    std::io::stdout()
                        .write_all(&csv)
                        .map_err(|e| CliError::Config(format!("stdout: {e}")))?;
                }
            }
            Ok(0)
        }
        Command::Validate { config } => {
            let spec = SweepSpec::load(&config)?;
            sweep::run_validate(&spec)
        }
        Command::OptimalTau { config } => {
            let mut spec = SweepSpec::load(&config)?;
            spec.estimators = vec![Estimator::OptimalTauClosed, Estimator::OptimalTauSearch];
            let csv = sweep::run_sweep(&spec)?;
            std::io::stdout()
                .write_all(&csv)
                .map_err(|e| CliError::Config(format!("stdout: {e}")))?;
            Ok(0)
        }
    }
}
