//! Entanglement of the initial coin state, θ sweeps, tail averages, and the
//! closed-form single-coin limit formula.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coin::{CoinAngles, GameLabel};
use crate::engine::{radius_for, run, schedule_alternating_multicoin, schedule_constant, MetricsSeries};
use crate::error::{Error, Result};
use crate::shift::{preset, ShiftPreset};
use crate::state::{init_two_coin_theta, WalkState};

/// `2·|a00·a11 − a01·a10|` for a two-coin state sitting entirely at the
/// origin.
pub fn concurrence_pure(state: &WalkState) -> Result<f64> {
    if state.coin_count() != 2 {
        return Err(Error::invalid(format!(
            "concurrence needs a two-coin state, got {} coin(s)",
            state.coin_count()
        )));
    }
    let off_origin = state
        .positions()
        .filter(|&n| n != 0)
        .any(|n| state.row(n).iter().any(|a| a.norm_sqr() != 0.0));
    if off_origin {
        return Err(Error::invalid("concurrence needs a state concentrated at the origin"));
    }
    let a = state.row(0);
    Ok(2.0 * (a[0b00] * a[0b11] - a[0b01] * a[0b10]).norm())
}

/// Mean margin over the last `window` entries.
pub fn tail_estimate(series: &MetricsSeries, window: usize) -> Result<f64> {
    tail_mean(&series.rows.iter().map(|m| m.margin).collect::<Vec<_>>(), window)
}

pub(crate) fn tail_mean(values: &[f64], window: usize) -> Result<f64> {
    if window == 0 || window > values.len() {
        return Err(Error::invalid(format!(
            "tail window {window} must be between 1 and the series length {}",
            values.len()
        )));
    }
    let tail = &values[values.len() - window..];
    Ok(tail.iter().sum::<f64>() / window as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaSweepRow {
    pub theta: f64,
    pub concurrence: f64,
    /// Tail margin for the alternating (A,B)/(B,A) schedule.
    pub margin_xy: f64,
    /// Tail margin for constant (A,B).
    pub margin_const: f64,
}

/// For each θ, the initial-state concurrence and the tail margins of the
/// alternating and constant schedules under the two-wait shift. Rows come
/// back in grid order.
pub fn theta_sweep(theta_grid: &[f64], steps: usize, window: usize) -> Result<Vec<ThetaSweepRow>> {
    use GameLabel::{A, B};
    if theta_grid.is_empty() {
        return Err(Error::invalid("theta grid is empty"));
    }
    if window == 0 || window > steps {
        return Err(Error::invalid(format!(
            "need steps ≥ window ≥ 1, got steps {steps}, window {window}"
        )));
    }
    let rule = preset(ShiftPreset::TwoWait);
    let alternating = schedule_alternating_multicoin(2, &[A, B], &[B, A])?;
    let constant = schedule_constant(2, &[A, B])?;
    let radius = radius_for(&rule, steps);

    theta_grid
        .par_iter()
        .map(|&theta| {
            let initial = init_two_coin_theta(theta, radius)?;
            let xy = run(&initial, &alternating, &rule, steps)?;
            let cst = run(&initial, &constant, &rule, steps)?;
            Ok(ThetaSweepRow {
                theta,
                concurrence: concurrence_pure(&initial)?,
                margin_xy: tail_estimate(&xy, window)?,
                margin_const: tail_estimate(&cst, window)?,
            })
        })
        .collect()
}

/// `k` evenly spaced points on `[0, 2π)`.
pub fn uniform_theta_grid(k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / k as f64)
        .collect()
}

/// λ and E from the printed single-coin asymptotic formula. Both are kept
/// complex: for real angles λ is purely imaginary, so E is never a real
/// margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KonnoLimit {
    pub lambda: Complex64,
    pub e_value: Complex64,
}

/// Evaluates, with `a = e^{iα}cosβ`,
///
/// ```text
/// λ = [i·e^{iα}cosβ·(−e^{iγ})sinβ + i·e^{−iα}cosβ·(−e^{−iγ})sinβ] / (2|a|²)
/// E = −(1 − √(1 − |a|²))·λ
/// ```
///
/// term by term, angles in degrees.
pub fn konno_limit(angles: CoinAngles) -> Result<KonnoLimit> {
    for v in [angles.alpha, angles.beta, angles.gamma] {
        if !v.is_finite() {
            return Err(Error::invalid(format!("non-finite angle {v}")));
        }
    }
    let alpha = angles.alpha.to_radians();
    let gamma = angles.gamma.to_radians();
    let (sin_b, cos_b) = angles.beta.to_radians().sin_cos();
    if cos_b.abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "cos β vanishes for β = {}°; λ has a zero denominator",
            angles.beta
        )));
    }
    let i = Complex64::i();
    let phase = |x: f64| Complex64::new(x.cos(), x.sin());

    let a = phase(alpha) * cos_b;
    let term1 = i * phase(alpha) * cos_b * (-phase(gamma)) * sin_b;
    let term2 = i * phase(-alpha) * cos_b * (-phase(-gamma)) * sin_b;
    let lambda = (term1 + term2) / (2.0 * a.norm_sqr());
    let e_value = -(1.0 - (1.0 - a.norm_sqr()).sqrt()) * lambda;
    Ok(KonnoLimit { lambda, e_value })
}
