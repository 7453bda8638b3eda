//! Conditional shift operators stored as displacement tables.
//!
//! Every shift used here is diagonal in the coin basis and a pure translation
//! in position, so a table `coin basis index → displacement` is the whole
//! operator. Applying it relabels positions within each coin sector.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::MAX_COINS;
use crate::error::{Error, Result};
use crate::state::WalkState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftPreset {
    /// One coin: |0⟩ → +1, |1⟩ → −1.
    Single,
    /// Two coins, |01⟩ and |10⟩ wait.
    TwoWait,
    /// Two coins, only |10⟩ waits; |11⟩ jumps by −2.
    OneWait,
    /// Three coins, displacements +2, +1, 0, 0, 0, 0, −1, −2.
    ThreeCoin,
}

impl ShiftPreset {
    pub const ALL: [ShiftPreset; 4] = [
        ShiftPreset::Single,
        ShiftPreset::TwoWait,
        ShiftPreset::OneWait,
        ShiftPreset::ThreeCoin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftPreset::Single => "single",
            ShiftPreset::TwoWait => "two_wait",
            ShiftPreset::OneWait => "one_wait",
            ShiftPreset::ThreeCoin => "three_coin",
        }
    }

    fn displacements(self) -> &'static [i64] {
        match self {
            ShiftPreset::Single => &[1, -1],
            ShiftPreset::TwoWait => &[1, 0, 0, -1],
            ShiftPreset::OneWait => &[1, 1, 0, -2],
            ShiftPreset::ThreeCoin => &[2, 1, 0, 0, 0, 0, -1, -2],
        }
    }
}

impl fmt::Display for ShiftPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShiftPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShiftPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown shift `{s}` (expected one of single, two_wait, one_wait, three_coin)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRule {
    name: String,
    coin_count: usize,
    displacements: Vec<i64>,
}

pub fn preset(name: ShiftPreset) -> ShiftRule {
    ShiftRule {
        name: name.name().to_string(),
        coin_count: match name {
            ShiftPreset::Single => 1,
            ShiftPreset::TwoWait | ShiftPreset::OneWait => 2,
            ShiftPreset::ThreeCoin => 3,
        },
        displacements: name.displacements().to_vec(),
    }
}

impl ShiftRule {
    /// User-defined table; its length must be 2, 4 or 8.
    pub fn custom(name: impl Into<String>, displacements: Vec<i64>) -> Result<Self> {
        let len = displacements.len();
        let coin_count = len.trailing_zeros() as usize;
        if !len.is_power_of_two() || coin_count == 0 || coin_count > MAX_COINS {
            return Err(Error::invalid(format!(
                "displacement table length {len} is not 2, 4 or 8"
            )));
        }
        Ok(Self {
            name: name.into(),
            coin_count,
            displacements,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coin_count(&self) -> usize {
        self.coin_count
    }

    pub fn displacements(&self) -> &[i64] {
        &self.displacements
    }

    /// Largest |displacement|; the walk's support grows by at most this much
    /// per step.
    pub fn max_displacement(&self) -> usize {
        self.displacements
            .iter()
            .map(|d| d.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Table with every displacement negated.
    pub fn inverse(&self) -> ShiftRule {
        ShiftRule {
            name: format!("{}_inverse", self.name),
            coin_count: self.coin_count,
            displacements: self.displacements.iter().map(|d| -d).collect(),
        }
    }

    /// Whether `d(b̄) = −d(b)` where `b̄` flips every coin bit. Such shifts
    /// commute with position mirroring composed with a full coin flip.
    pub fn is_complement_antisymmetric(&self) -> bool {
        let mask = (1usize << self.coin_count) - 1;
        self.displacements
            .iter()
            .enumerate()
            .all(|(b, &d)| self.displacements[b ^ mask] == -d)
    }
}

/// Moves the amplitude at `(n, b)` to `(n + d[b], b)` for every site and coin
/// basis state. Fails rather than truncate when the support would leave the
/// lattice.
pub fn apply_shift(state: &WalkState, rule: &ShiftRule) -> Result<WalkState> {
    if rule.coin_count() != state.coin_count() {
        return Err(Error::invalid(format!(
            "shift `{}` is for {} coin(s) but the state has {}",
            rule.name(),
            rule.coin_count(),
            state.coin_count()
        )));
    }
    let extent = state.extent();
    let new_extent = extent + rule.max_displacement();
    if new_extent > state.radius() {
        return Err(Error::Capacity {
            required: new_extent,
            radius: state.radius(),
        });
    }

    let dim = state.coin_dim();
    let r = state.radius() as i64;
    let src = state.amplitudes();
    let mut out = state.clone();
    let dst = out.amplitudes_mut();
    dst.fill(Complex64::new(0.0, 0.0));

    let e = extent as i64;
    for n in -e..=e {
        let from = ((n + r) as usize) * dim;
        for (b, &d) in rule.displacements().iter().enumerate() {
            let to = ((n + d + r) as usize) * dim;
            dst[to + b] = src[from + b];
        }
    }
    out.set_extent(new_extent);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{init_basis, metrics};

    #[test]
    fn preset_tables() {
        assert_eq!(preset(ShiftPreset::Single).displacements(), &[1, -1]);
        assert_eq!(preset(ShiftPreset::TwoWait).displacements(), &[1, 0, 0, -1]);
        assert_eq!(preset(ShiftPreset::OneWait).displacements(), &[1, 1, 0, -2]);
        let three = preset(ShiftPreset::ThreeCoin);
        assert_eq!(three.displacements()[0b000], 2);
        assert_eq!(three.displacements(), &[2, 1, 0, 0, 0, 0, -1, -2]);
        assert_eq!(three.coin_count(), 3);
        for p in ShiftPreset::ALL {
            let rule = preset(p);
            assert_eq!(rule.displacements().len(), 1 << rule.coin_count());
            assert!(rule.max_displacement() <= 2);
            assert_eq!(p.name().parse::<ShiftPreset>().unwrap(), p);
        }
        assert!("zigzag".parse::<ShiftPreset>().is_err());
    }

    #[test]
    fn single_moves_heads_right() {
        let s = WalkState::delta(1, 2, 0, 0).unwrap();
        let out = apply_shift(&s, &preset(ShiftPreset::Single)).unwrap();
        assert_eq!(out.amplitude(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(metrics(&out).p_right, 1.0);
    }

    #[test]
    fn two_wait_leaves_mixed_coins_in_place() {
        let s = init_basis(2, "01", 2).unwrap();
        let out = apply_shift(&s, &preset(ShiftPreset::TwoWait)).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn one_wait_jumps_two_left() {
        let s = init_basis(2, "11", 3).unwrap();
        let out = apply_shift(&s, &preset(ShiftPreset::OneWait)).unwrap();
        assert_eq!(out.amplitude(-2, 0b11), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn capacity_is_a_hard_error() {
        let s = init_basis(2, "11", 1).unwrap();
        match apply_shift(&s, &preset(ShiftPreset::OneWait)) {
            Err(Error::Capacity { required: 2, radius: 1 }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn coin_count_mismatch() {
        let s = init_basis(2, "11", 3).unwrap();
        assert!(apply_shift(&s, &preset(ShiftPreset::Single)).is_err());
    }

    #[test]
    fn antisymmetry_flags() {
        assert!(preset(ShiftPreset::Single).is_complement_antisymmetric());
        assert!(preset(ShiftPreset::TwoWait).is_complement_antisymmetric());
        assert!(preset(ShiftPreset::ThreeCoin).is_complement_antisymmetric());
        assert!(!preset(ShiftPreset::OneWait).is_complement_antisymmetric());
    }

    #[test]
    fn custom_tables() {
        assert!(ShiftRule::custom("odd", vec![1, 0, -1]).is_err());
        assert!(ShiftRule::custom("big", vec![0; 16]).is_err());
        let r = ShiftRule::custom("mine", vec![3, -3]).unwrap();
        assert_eq!(r.max_displacement(), 3);
        assert_eq!(r.inverse().displacements(), &[-3, 3]);
    }
}
