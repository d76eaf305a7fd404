//! Command-line front end for the standby-system analyzer.
//!
//! Reports go to stdout by default; `--out FILE` writes them to disk and
//! prints a one-line confirmation (silenced by `--quiet`). Errors are
//! emitted as a single JSON object on stderr, and the exit code tells the
//! caller what went wrong: 0 for a completed analysis (whether or not
//! maintenance turned out to be worthwhile), 2 for configuration or domain
//! problems, 3 for numeric failures.

mod commands;
mod config;
mod error;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CompareMode, PmSpec};
use config::ScenarioConfig;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "standby",
    version,
    about = "Analyze a two-unit priority standby system with repair and preventive maintenance"
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Suppress the confirmation line printed when --out is used.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full policy analysis: hazard shape, benefit threshold, optimal time.
    Analyze {
        /// Scenario file (JSON).
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
    /// Tabulate MTTF and related curves over a grid of maintenance times.
    Curve {
        /// Scenario file (JSON).
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// First maintenance time on the grid (must be positive).
        #[arg(long = "t-min", value_name = "TIME")]
        t_min: f64,
        /// Last maintenance time on the grid.
        #[arg(long = "t-max", value_name = "TIME")]
        t_max: f64,
        /// Number of grid points, endpoints included.
        #[arg(long, default_value_t = 500)]
        points: usize,
    },
    /// Monte-Carlo estimate of the MTTF at one maintenance time.
    Simulate {
        /// Scenario file (JSON).
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Maintenance time, or 'inf' to never maintain.
        #[arg(long = "pm-time", value_name = "TIME|inf")]
        pm_time: PmSpec,
        /// Number of independent replications (overrides the scenario file).
        #[arg(long)]
        replications: Option<u64>,
        /// Base RNG seed (overrides the scenario file).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a comparison theorem between the scenario's model and its
    /// 'comparison' model.
    Compare {
        /// Scenario file (JSON) containing both models.
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Which comparison to run.
        #[arg(long, value_enum)]
        mode: CompareMode,
        /// Number of maintenance times on the dominance grid.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Classify the failure-rate shape of a single distribution.
    Classify {
        /// Distribution literal as JSON, e.g. '{"weibull":{"scale":1.0,"shape":0.5}}'.
        #[arg(long, value_name = "JSON")]
        dist: String,
    },
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze { config } => {
            let scenario = ScenarioConfig::load(config)?;
            commands::analyze(&scenario)
        }
        Command::Curve {
            config,
            t_min,
            t_max,
            points,
        } => {
            let scenario = ScenarioConfig::load(config)?;
            commands::curve(&scenario, *t_min, *t_max, *points)
        }
        Command::Simulate {
            config,
            pm_time,
            replications,
            seed,
        } => {
            let scenario = ScenarioConfig::load(config)?;
            commands::simulate(&scenario, *pm_time, *replications, *seed)
        }
        Command::Compare {
            config,
            mode,
            points,
        } => {
            let scenario = ScenarioConfig::load(config)?;
            commands::compare(&scenario, *mode, *points)
        }
        Command::Classify { dist } => commands::classify(dist),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(payload) => match &cli.out {
            Some(path) => {
                if let Err(err) = std::fs::write(path, &payload) {
                    fail(&CliError::Io(format!("writing {}: {err}", path.display())));
                }
                if !cli.quiet {
                    println!("wrote {}", path.display());
                }
            }
            None => print!("{payload}"),
        },
        Err(err) => fail(&err),
    }
}

fn fail(err: &CliError) -> ! {
    eprintln!("{}", err.to_json());
    std::process::exit(err.exit_code());
}
