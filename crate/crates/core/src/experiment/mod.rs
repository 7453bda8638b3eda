//! Experiment plumbing behind the command-line runner: configs, named presets,
//! reports and output files.

mod config;
mod output;
mod preset;
mod report;

pub use config::{ExperimentConfig, InitialSpec, OutputFormat, ScheduleSpec};
pub use output::{format_sig, series_csv, sweep_csv, write_outcome};
pub use preset::{find_preset, presets, Preset, PresetKind, SweepSpec};
pub use report::{execute, run_preset, KonnoCheck, Outcome, RunReport, Verdict, DRAW_TOLERANCE};
