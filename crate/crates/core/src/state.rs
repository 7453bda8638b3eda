//! Walker ⊗ coins state vector on a bounded integer lattice, the standard
//! initial states, and the position-distribution metrics used to score a game.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::MAX_COINS;
use crate::error::{Error, Result};

/// Tolerance on total probability.
pub const NORM_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Amplitudes indexed by (position, coin basis index) over positions
/// `-radius..=radius`. Row-major: one contiguous block of `2^coin_count`
/// amplitudes per position.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    coin_count: usize,
    radius: usize,
    /// Every amplitude with `|position| > extent` is exactly zero.
    extent: usize,
    amplitudes: Vec<Complex64>,
}

impl WalkState {
    /// All-zero state. Not normalized; callers fill it in.
    fn zeroed(coin_count: usize, radius: usize) -> Result<Self> {
        if coin_count == 0 || coin_count > MAX_COINS {
            return Err(Error::invalid(format!(
                "coin count must be between 1 and {MAX_COINS}, got {coin_count}"
            )));
        }
        let len = (2 * radius + 1) << coin_count;
        Ok(Self {
            coin_count,
            radius,
            extent: 0,
            amplitudes: vec![ZERO; len],
        })
    }

    /// Builds a state with the given coin amplitudes at the origin.
    pub fn at_origin(coin_amplitudes: &[Complex64], radius: usize) -> Result<Self> {
        let coin_count = coin_amplitudes.len().trailing_zeros() as usize;
        if !coin_amplitudes.len().is_power_of_two() || coin_count == 0 {
            return Err(Error::invalid(format!(
                "coin amplitude vector length {} is not 2, 4 or 8",
                coin_amplitudes.len()
            )));
        }
        let mut state = Self::zeroed(coin_count, radius)?;
        state.row_mut(0).copy_from_slice(coin_amplitudes);
        state.check_norm()?;
        Ok(state)
    }

    /// Builds a state from a full amplitude table laid out as described on
    /// the type. The table must be normalized.
    pub fn from_amplitudes(coin_count: usize, radius: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::zeroed(coin_count, radius)?;
        if amplitudes.len() != state.amplitudes.len() {
            return Err(Error::invalid(format!(
                "expected {} amplitudes, got {}",
                state.amplitudes.len(),
                amplitudes.len()
            )));
        }
        state.amplitudes = amplitudes;
        state.extent = state.observed_extent();
        state.check_norm()?;
        Ok(state)
    }

    /// Unit amplitude at one lattice site and coin basis state.
    pub fn delta(coin_count: usize, radius: usize, position: i64, basis: usize) -> Result<Self> {
        let mut state = Self::zeroed(coin_count, radius)?;
        if position.unsigned_abs() as usize > radius {
            return Err(Error::invalid(format!("position {position} outside radius {radius}")));
        }
        if basis >= state.coin_dim() {
            return Err(Error::invalid(format!("coin basis index {basis} out of range")));
        }
        state.row_mut(position)[basis] = Complex64::new(1.0, 0.0);
        state.extent = position.unsigned_abs() as usize;
        Ok(state)
    }

    pub fn coin_count(&self) -> usize {
        self.coin_count
    }

    pub fn coin_dim(&self) -> usize {
        1 << self.coin_count
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Bound on the occupied region: all amplitudes beyond it are zero.
    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, position: i64, basis: usize) -> Complex64 {
        self.row(position)[basis]
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<i64> {
        let r = self.radius as i64;
        -r..=r
    }

    fn row_start(&self, position: i64) -> usize {
        let r = self.radius as i64;
        assert!(position.abs() <= r, "position {position} outside radius {r}");
        ((position + r) as usize) * self.coin_dim()
    }

    /// Coin-space amplitudes at one lattice site.
    pub fn row(&self, position: i64) -> &[Complex64] {
        let start = self.row_start(position);
        &self.amplitudes[start..start + self.coin_dim()]
    }

    pub(crate) fn row_mut(&mut self, position: i64) -> &mut [Complex64] {
        let start = self.row_start(position);
        let dim = self.coin_dim();
        &mut self.amplitudes[start..start + dim]
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub(crate) fn set_extent(&mut self, extent: usize) {
        debug_assert!(extent <= self.radius);
        self.extent = extent;
    }

    fn observed_extent(&self) -> usize {
        self.positions()
            .filter(|&n| self.row(n).iter().any(|a| *a != ZERO))
            .map(|n| n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_norm(&self) -> Result<()> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!("state norm is {norm}, expected 1")));
        }
        Ok(())
    }

    /// Reflects positions `n → −n`, leaving each coin sector's amplitudes
    /// untouched.
    pub fn mirrored(&self) -> WalkState {
        let mut out = self.clone();
        for n in self.positions() {
            out.row_mut(-n).copy_from_slice(self.row(n));
        }
        out
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> WalkState {
        let phase = Complex64::new(phi.cos(), phi.sin());
        let mut out = self.clone();
        out.amplitudes.iter_mut().for_each(|a| *a *= phase);
        out
    }
}

/// `(1/√2)|0⟩ ⊗ (|0⟩ − i|1⟩)`: single coin in an equal superposition.
pub fn init_single_default(radius: usize) -> WalkState {
    let amp = [Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(0.0, -FRAC_1_SQRT_2)];
    WalkState::at_origin(&amp, radius).expect("default single-coin state is normalized")
}

/// `|0⟩ ⊗ (cos(θ/2)|10⟩ + i·sin(θ/2)|01⟩)`, θ in radians.
pub fn init_two_coin_theta(theta: f64, radius: usize) -> Result<WalkState> {
    if !theta.is_finite() {
        return Err(Error::invalid(format!("theta is not finite: {theta}")));
    }
    let (s, c) = (theta / 2.0).sin_cos();
    let mut amp = [ZERO; 4];
    amp[0b10] = Complex64::new(c, 0.0);
    amp[0b01] = Complex64::new(0.0, s);
    WalkState::at_origin(&amp, radius)
}

/// Converts a bit string such as `"010"` to a coin basis index, coin 1 first.
pub fn basis_index(label: &str) -> Result<usize> {
    if label.is_empty() || label.len() > MAX_COINS {
        return Err(Error::invalid(format!("basis label `{label}` must have 1 to {MAX_COINS} bits")));
    }
    label.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::invalid(format!("basis label `{label}` contains `{ch}`"))),
    })
}

/// Walker at the origin with the coins in a computational basis state.
pub fn init_basis(coin_count: usize, basis_label: &str, radius: usize) -> Result<WalkState> {
    if basis_label.chars().count() != coin_count {
        return Err(Error::invalid(format!(
            "basis label `{basis_label}` has {} bits but coin count is {coin_count}",
            basis_label.chars().count()
        )));
    }
    WalkState::delta(coin_count, radius, 0, basis_index(basis_label)?)
}

/// Marginal probability of each lattice site.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    radius: usize,
    probabilities: Vec<f64>,
}

impl PositionDistribution {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, position: i64) -> f64 {
        let idx = position + self.radius as i64;
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.probabilities.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Expected position ⟨n⟩.
    pub fn mean(&self) -> f64 {
        let r = self.radius as i64;
        self.probabilities
            .iter()
            .enumerate()
            .map(|(i, p)| (i as i64 - r) as f64 * p)
            .sum()
    }
}

pub fn position_distribution(state: &WalkState) -> PositionDistribution {
    let probabilities = state
        .amplitudes()
        .chunks_exact(state.coin_dim())
        .map(|row| row.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    PositionDistribution {
        radius: state.radius(),
        probabilities,
    }
}

/// Probability mass strictly right of, strictly left of, and at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub p_right: f64,
    pub p_left: f64,
    pub p_origin: f64,
    /// `p_right − p_left`: positive wins, negative loses.
    pub margin: f64,
}

impl Metrics {
    pub fn from_distribution(dist: &PositionDistribution) -> Self {
        let r = dist.radius;
        let probs = dist.probabilities();
        // Both sides are summed outward from the origin so that mirroring a
        // state swaps p_left and p_right bit for bit.
        let p_left: f64 = probs[..r].iter().rev().sum();
        let p_origin = probs[r];
        let p_right: f64 = probs[r + 1..].iter().sum();
        Self {
            p_right,
            p_left,
            p_origin,
            margin: p_right - p_left,
        }
    }
}

pub fn metrics(state: &WalkState) -> Metrics {
    Metrics::from_distribution(&position_distribution(state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn default_single_state() {
        let s = init_single_default(5);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert_eq!(s.amplitude(0, 0), Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert!((s.amplitude(0, 1) - Complex64::new(0.0, -0.70710678)).norm() < 1e-8);
        let m = metrics(&s);
        assert!((m.p_origin - 1.0).abs() < 1e-15);
        assert_eq!(m.margin, 0.0);
        assert_eq!(s.extent(), 0);
    }

    #[test]
    fn two_coin_theta_states() {
        let s0 = init_two_coin_theta(0.0, 3).unwrap();
        assert_eq!(s0.amplitude(0, 0b10), Complex64::new(1.0, 0.0));
        assert_eq!(s0.amplitude(0, 0b01).norm(), 0.0);

        let spi = init_two_coin_theta(PI, 3).unwrap();
        assert!((spi.amplitude(0, 0b01) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(spi.amplitude(0, 0b10).norm() < 1e-15);

        let half = init_two_coin_theta(PI / 2.0, 3).unwrap();
        assert!((half.amplitude(0, 0b10) - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((half.amplitude(0, 0b01) - Complex64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn basis_states() {
        let s = init_basis(2, "00", 2).unwrap();
        assert_eq!(s.amplitude(0, 0), Complex64::new(1.0, 0.0));
        let s = init_basis(3, "010", 2).unwrap();
        assert_eq!(s.amplitude(0, 2), Complex64::new(1.0, 0.0));
        assert_eq!(init_basis(2, "10", 4).unwrap(), init_two_coin_theta(0.0, 4).unwrap());
        assert!(init_basis(2, "101", 2).is_err());
        assert!(init_basis(2, "1x", 2).is_err());
    }

    #[test]
    fn distribution_and_metrics() {
        let s = WalkState::delta(1, 4, 3, 0).unwrap();
        let d = position_distribution(&s);
        assert_eq!(d.probability(3), 1.0);
        assert_eq!(d.total(), 1.0);
        assert_eq!(d.mean(), 3.0);

        let m = metrics(&WalkState::delta(1, 4, 1, 1).unwrap());
        assert_eq!((m.p_right, m.p_left, m.p_origin, m.margin), (1.0, 0.0, 0.0, 1.0));

        let m = metrics(&init_single_default(4));
        assert_eq!(m.margin, 0.0);
        assert!((m.p_origin - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_distribution_has_zero_margin() {
        let h = Complex64::new(0.5, 0.0);
        let mut amps = vec![ZERO; 5 * 2];
        // positions −2..=2, coin dim 2
        amps[0] = h;
        amps[1] = h;
        amps[8] = h;
        amps[9] = Complex64::new(0.0, -0.5);
        let s = WalkState::from_amplitudes(1, 2, amps).unwrap();
        assert_eq!(s.extent(), 2);
        assert!(metrics(&s).margin.abs() < 1e-12);
    }

    #[test]
    fn mirroring_swaps_sides() {
        let amps: Vec<Complex64> = (0..7 * 2)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps = amps.into_iter().map(|a| a / norm).collect();
        let s = WalkState::from_amplitudes(1, 3, amps).unwrap();
        let m = metrics(&s);
        let mm = metrics(&s.mirrored());
        assert_eq!(m.p_right, mm.p_left);
        assert_eq!(m.p_left, mm.p_right);
        assert_eq!(m.margin, -mm.margin);
    }

    #[test]
    fn unnormalized_input_rejected() {
        let amps = vec![Complex64::new(1.0, 0.0); 2];
        assert!(WalkState::from_amplitudes(1, 0, amps).is_err());
        assert!(WalkState::at_origin(&[ZERO; 3], 1).is_err());
        assert!(WalkState::delta(4, 1, 0, 0).is_err());
        assert!(WalkState::delta(1, 1, 2, 0).is_err());
    }
}
