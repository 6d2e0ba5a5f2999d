use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use sonotag_core::scenario::{Command, CommandError, ScenarioConfig};

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

/// Ultrasonic ranging and RF power-beaming experiments, written as CSV.
#[derive(Parser, Debug)]
#[command(name = "sonotag", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Initial and update charge time against distance.
    ChargeCurve(Common),
    /// End-to-end ranging error over the distance grid.
    Range(Common),
    /// Per-measurement energy and E-buffer capacitance.
    SizeBuffer(Common),
    /// Duty-cycle-limited position updates per hour.
    UpdateRate(Common),
    /// Beam-sweep pre-charge time per tag bearing and array size.
    Sweep(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// JSON config; fields left out keep their defaults.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Noise seed (overrides rng_seed).
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Dotted-path override, e.g. --set link.duty_cycle=0.2 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn run(command: Command, args: &Common) -> Result<(), CommandError> {
    let cfg = ScenarioConfig::load(args.config.as_deref(), &args.overrides, args.seed)?;
    let csv = command.run(&cfg)?.to_csv();
    match args.out.as_ref().or(cfg.output.as_ref()) {
        Some(path) => {
            fs::write(path, csv).map_err(|e| {
                CommandError::Runtime(format!("cannot write {}: {e}", path.display()))
            })?;
            info!("wrote {}", path.display());
        }
        None => io::stdout()
            .write_all(csv.as_bytes())
            .map_err(|e| CommandError::Runtime(format!("cannot write to stdout: {e}")))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (command, args) = match &cli.command {
        Sub::ChargeCurve(a) => (Command::ChargeCurve, a),
        Sub::Range(a) => (Command::Range, a),
        Sub::SizeBuffer(a) => (Command::SizeBuffer, a),
        Sub::UpdateRate(a) => (Command::UpdateRate, a),
        Sub::Sweep(a) => (Command::Sweep, a),
    };
    match run(command, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CommandError::Config(_)) => {
            eprintln!("sonotag: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(e @ CommandError::Runtime(_)) => {
            eprintln!("sonotag: {e}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
