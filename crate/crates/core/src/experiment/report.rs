use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{konno_limit, tail_estimate, theta_sweep, uniform_theta_grid, KonnoLimit, ThetaSweepRow};
use crate::coin::CoinAngles;
use crate::engine::{radius_for, run_with_state, MetricsSeries};
use crate::error::{Error, Result};
use crate::state::{position_distribution, Metrics};

use super::config::ExperimentConfig;
use super::preset::{find_preset, PresetKind, SweepSpec};

/// |tail estimate| below this is a draw.
pub const DRAW_TOLERANCE: f64 = 1e-6;

/// Largest distance at which the closed-form limit and the simulated tail
/// count as agreeing.
const KONNO_AGREEMENT_TOL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Win,
    Lose,
    Draw,
}

impl Verdict {
    pub fn from_tail(tail: f64) -> Self {
        if tail.abs() < DRAW_TOLERANCE {
            Verdict::Draw
        } else if tail > 0.0 {
            Verdict::Win
        } else {
            Verdict::Lose
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Win => "win",
            Verdict::Lose => "lose",
            Verdict::Draw => "draw",
        })
    }
}

/// Closed-form single-coin limit set against the simulation, for constant
/// single-coin SU(2) runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KonnoCheck {
    pub angles: CoinAngles,
    pub limit: KonnoLimit,
    pub simulated_tail: f64,
    pub simulated_mean_velocity: f64,
    /// Whether `|E − tail| ≤ 0.02` in the complex plane.
    pub agrees_with_tail: bool,
    pub note: String,
}

impl KonnoCheck {
    fn new(angles: CoinAngles, simulated_tail: f64, simulated_mean_velocity: f64) -> Result<Self> {
        let limit = konno_limit(angles)?;
        let distance = (limit.e_value - simulated_tail).norm();
        let agrees_with_tail = distance <= KONNO_AGREEMENT_TOL;
        let note = if agrees_with_tail {
            "closed-form limit agrees with the simulated tail".to_string()
        } else {
            format!(
                "MISMATCH: closed-form limit E = {:.6}{:+.6}i differs from the simulated P_R-P_L tail {:.6} (distance {:.4})",
                limit.e_value.re, limit.e_value.im, simulated_tail, distance
            )
        };
        Ok(Self {
            angles,
            limit,
            simulated_tail,
            simulated_mean_velocity,
            agrees_with_tail,
            note,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub final_metrics: Metrics,
    pub tail_estimate: f64,
    pub verdict: Verdict,
    /// ⟨n⟩/N of the final state.
    pub mean_velocity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub konno_check: Option<KonnoCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_file: Option<String>,
}

impl RunReport {
    pub fn summary(&self) -> String {
        let m = &self.final_metrics;
        let mut out = format!(
            "{name}: {steps} steps, shift {shift}, initial {initial}\n  final  P_R={:.6} P_L={:.6} P_0={:.6} margin={:+.6}\n  tail   mean margin over last {w} steps = {:+.6} -> {verdict}\n  <n>/N = {:+.6}",
            m.p_right,
            m.p_left,
            m.p_origin,
            m.margin,
            self.tail_estimate,
            self.mean_velocity,
            name = self.config.name,
            steps = self.config.steps,
            shift = self.config.shift,
            initial = self.config.initial.describe(),
            w = self.config.window,
            verdict = self.verdict,
        );
        if let Some(k) = &self.konno_check {
            out.push_str(&format!(
                "\n  closed-form limit: lambda = {:.6}{:+.6}i, E = {:.6}{:+.6}i\n  {}",
                k.limit.lambda.re, k.limit.lambda.im, k.limit.e_value.re, k.limit.e_value.im, k.note
            ));
        }
        if let Some(path) = &self.series_file {
            out.push_str(&format!("\n  series written to {path}"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Walk { report: RunReport, series: MetricsSeries },
    Sweep { spec: SweepSpec, rows: Vec<ThetaSweepRow> },
}

/// Runs one validated config end to end.
pub fn execute(config: &ExperimentConfig) -> Result<(RunReport, MetricsSeries)> {
    config.validate()?;
    let rule = config.shift_rule();
    let schedule = config.game_schedule()?;
    let initial = config.initial.build(config.coin_count, radius_for(&rule, config.steps))?;
    let (series, final_state) = run_with_state(&initial, &config.initial.describe(), &schedule, &rule, config.steps)?;

    let tail = tail_estimate(&series, config.window)?;
    let mean_velocity = position_distribution(&final_state).mean() / config.steps as f64;
    let konno_check = match (config.coin_count, schedule.constant_labels()) {
        (1, Some([label])) => match schedule.coins().angles(*label) {
            Some(angles) => Some(KonnoCheck::new(angles, tail, mean_velocity)?),
            None => None,
        },
        _ => None,
    };
    let report = RunReport {
        config: config.clone(),
        final_metrics: *series.last().expect("steps ≥ 1 after validation"),
        tail_estimate: tail,
        verdict: Verdict::from_tail(tail),
        mean_velocity,
        konno_check,
        series_file: None,
    };
    Ok((report, series))
}

/// Runs a named preset, optionally overriding its step count and window.
/// Without an explicit window the default is clamped to the step count.
pub fn run_preset(name: &str, steps: Option<usize>, window: Option<usize>) -> Result<Outcome> {
    let preset = find_preset(name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    match preset.kind {
        PresetKind::Walk(mut config) => {
            if let Some(n) = steps {
                config.steps = n;
                config.window = config.window.min(n.max(1));
            }
            if let Some(w) = window {
                config.window = w;
            }
            let (report, series) = execute(&config)?;
            Ok(Outcome::Walk { report, series })
        }
        PresetKind::Sweep(mut spec) => {
            if let Some(n) = steps {
                spec.steps = n;
                spec.window = spec.window.min(n.max(1));
            }
            if let Some(w) = window {
                spec.window = w;
            }
            let rows = theta_sweep(&uniform_theta_grid(spec.grid), spec.steps, spec.window)?;
            Ok(Outcome::Sweep { spec, rows })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_thresholds() {
        assert_eq!(Verdict::from_tail(0.0), Verdict::Draw);
        assert_eq!(Verdict::from_tail(5e-7), Verdict::Draw);
        assert_eq!(Verdict::from_tail(-5e-7), Verdict::Draw);
        assert_eq!(Verdict::from_tail(2e-6), Verdict::Win);
        assert_eq!(Verdict::from_tail(-0.3), Verdict::Lose);
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(run_preset("nope", None, None), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn short_preset_runs() {
        let Outcome::Walk { report, series } = run_preset("fig3a", Some(20), None).unwrap() else {
            panic!("fig3a is a walk preset");
        };
        assert_eq!(series.len(), 20);
        assert_eq!(report.config.window, 20);
        assert!(report.konno_check.is_none());

        let Outcome::Walk { report, .. } = run_preset("fig2a_A", Some(50), Some(10)).unwrap() else {
            panic!("fig2a_A is a walk preset");
        };
        let k = report.konno_check.expect("constant single-coin run carries the closed-form check");
        assert!(k.limit.e_value.im > 0.18);
        assert!(run_preset("fig2a_A", Some(5), Some(6)).is_err());
    }
}
