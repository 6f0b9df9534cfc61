use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use nmwit::commands;
use nmwit::config::Settings;
use nmwit::output::sig12;
use nmwit::CliError;
use serde::Serialize;

/// Snapshot divisibility, SPA witnesses and positive-map entanglement tests
/// for time-local master equations.
#[derive(Debug, Parser)]
#[command(name = "nmwit", version)]
struct Cli {
    /// JSON config file; command-line flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Choi-state minimum eigenvalue and trace-norm excess over a time grid.
    Divisibility(#[command(flatten)] Settings),
    /// Witness value and verdict over a time grid.
    Witness {
        #[command(flatten)]
        settings: Settings,
        /// Also write the witness operators as a JSON array.
        #[arg(long)]
        export_witness: Option<PathBuf>,
    },
    /// Optimal depolarizing mixture over a time grid.
    Spa(#[command(flatten)] Settings),
    /// Werner-state detection by a Pauli map point, or a phase scan.
    Entangle {
        #[command(flatten)]
        settings: Settings,
        /// Scan the (gamma1, gamma2) grid instead of a single point.
        #[arg(long)]
        scan: bool,
    },
    /// Randomized check of the witness adjoint identity.
    Prop1(#[command(flatten)] Settings),
}

#[derive(Serialize)]
struct Echo<'a, C: Serialize> {
    command: &'static str,
    #[serde(flatten)]
    config: &'a C,
}

fn merged(settings: Settings, file: &Option<PathBuf>) -> Result<Settings, CliError> {
    Ok(match file {
        Some(path) => settings.merged_over(Settings::load(path)?),
        None => settings,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Divisibility(settings) => {
            let cfg = merged(settings, &cli.config)?.scenario_config()?;
            let table = commands::divisibility(&cfg)?;
            let echo = Echo { command: "divisibility", config: &cfg };
            table.write(cfg.format, cfg.output.as_deref(), &echo)
        }
        Command::Spa(settings) => {
            let cfg = merged(settings, &cli.config)?.scenario_config()?;
            let table = commands::spa(&cfg)?;
            let echo = Echo { command: "spa", config: &cfg };
            table.write(cfg.format, cfg.output.as_deref(), &echo)
        }
        Command::Witness { settings, export_witness } => {
            let cfg = merged(settings, &cli.config)?.scenario_config()?;
            let (table, exports) = commands::witness(&cfg)?;
            if let Some(path) = export_witness {
                let mut out = BufWriter::new(File::create(path)?);
                serde_json::to_writer_pretty(&mut out, &exports)?;
            }
            let echo = Echo { command: "witness", config: &cfg };
            table.write(cfg.format, cfg.output.as_deref(), &echo)
        }
        Command::Entangle { settings, scan } => {
            let cfg = merged(settings, &cli.config)?.entangle_config()?;
            let table = if scan {
                let (table, bounds) = commands::entangle_scan(&cfg)?;
                for b in bounds {
                    eprintln!(
                        "gamma1 = {}: max positive gamma2 = {:?}, min non-CP gamma2 = {:?}",
                        sig12(b.gamma1),
                        b.max_positive_gamma2.map(sig12),
                        b.min_ncp_gamma2.map(sig12)
                    );
                }
                table
            } else {
                commands::entangle_point(&cfg)?
            };
            let echo = Echo { command: if scan { "entangle-scan" } else { "entangle" }, config: &cfg };
            table.write(cfg.format, cfg.output.as_deref(), &echo)
        }
        Command::Prop1(settings) => {
            let cfg = merged(settings, &cli.config)?.prop1_config()?;
            let table = commands::prop1(&cfg)?;
            let echo = Echo { command: "prop1", config: &cfg };
            table.write(cfg.format, cfg.output.as_deref(), &echo)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("nmwit: {err}");
        process::exit(err.exit_code());
    }
}
