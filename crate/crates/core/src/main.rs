use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use parrondo_walk::analysis::{theta_sweep, uniform_theta_grid};
use parrondo_walk::experiment::{
    execute, presets, run_preset, write_outcome, ExperimentConfig, OutputFormat, Outcome, PresetKind, SweepSpec,
};
use parrondo_walk::{Error, Result};

#[derive(Parser)]
#[command(name = "parrondo-walk", version, about = "Multi-coin quantum walk game simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named preset or a config file and emit the per-step series.
    Run {
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<String>,
        /// Flat key/value TOML experiment file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
        /// Output file; the data goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
    },
    /// Sweep θ over a uniform grid on [0, 2π) under the two-wait shift.
    Sweep {
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 800)]
        steps: usize,
        #[arg(long, default_value_t = 200)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_format, default_value = "csv")]
        format: OutputFormat,
    },
    /// List the available presets.
    ListPresets,
    /// Print a preset as a config file that `run --config` accepts.
    ShowPreset { name: String },
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn preset_listing() -> String {
    presets()
        .iter()
        .map(|p| format!("  {:<14} {}", p.name, p.description))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Prints data to stdout when there is no output file, and the human
/// summary to whichever stream the data is not using.
fn emit(mut outcome: Outcome, format: OutputFormat, out: Option<PathBuf>) -> Result<()> {
    if let Outcome::Walk { report, .. } = &mut outcome {
        report.series_file = out.as_ref().map(|p| p.display().to_string());
    }
    let data = write_outcome(&outcome, format, out.as_deref())?;
    let summary = match &outcome {
        Outcome::Walk { report, .. } => report.summary(),
        Outcome::Sweep { spec, .. } => {
            let mut s = format!("theta sweep: {} points, {} steps, window {}", spec.grid, spec.steps, spec.window);
            if let Some(p) = &out {
                s.push_str(&format!("\n  rows written to {}", p.display()));
            }
            s
        }
    };
    match data {
        Some(data) => {
            print!("{data}");
            eprintln!("{summary}");
        }
        None => println!("{summary}"),
    }
    Ok(())
}

fn run_command(command: Command) -> Result<()> {
    match command {
        Command::Run {
            preset,
            config,
            steps,
            window,
            out,
            format,
        } => {
            if let Some(path) = config {
                let mut cfg = ExperimentConfig::from_path(&path)?;
                if let Some(n) = steps {
                    cfg.steps = n;
                }
                if let Some(w) = window {
                    cfg.window = w;
                }
                let format = format.unwrap_or(cfg.format);
                let out = out.or_else(|| cfg.out.clone());
                let (report, series) = execute(&cfg)?;
                emit(Outcome::Walk { report, series }, format, out)
            } else {
                let name = preset.expect("clap requires --preset or --config");
                let outcome = run_preset(&name, steps, window)?;
                emit(outcome, format.unwrap_or_default(), out)
            }
        }
        Command::Sweep {
            grid,
            steps,
            window,
            out,
            format,
        } => {
            let rows = theta_sweep(&uniform_theta_grid(grid), steps, window)?;
            let spec = SweepSpec { grid, steps, window };
            emit(Outcome::Sweep { spec, rows }, format, out)
        }
        Command::ListPresets => {
            println!("{}", preset_listing());
            Ok(())
        }
        Command::ShowPreset { name } => {
            let preset = presets()
                .into_iter()
                .find(|p| p.name == name)
                .ok_or_else(|| Error::UnknownPreset(name.clone()))?;
            match preset.kind {
                PresetKind::Walk(cfg) => print!("{}", cfg.to_toml_string()),
                PresetKind::Sweep(spec) => println!(
                    "# sweep preset; run with: sweep --grid {} --steps {} --window {}",
                    spec.grid, spec.steps, spec.window
                ),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ Error::UnknownPreset(_)) => {
            eprintln!("error: {err}\navailable presets:\n{}", preset_listing());
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
