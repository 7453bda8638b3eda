//! Coin operators: SU(2) single-qubit coins built from angle triples, the
//! classical identity/NOT coins, and Kronecker products for 2- and 3-coin
//! spaces.
//!
//! Basis convention: for `c` coins the basis index is the integer whose most
//! significant bit is coin 1, so `|10⟩` has index 2 and `|010⟩` index 2.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest coin count the simulator supports.
pub const MAX_COINS: usize = 3;

/// Entry-wise tolerance used for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-12;

/// SU(2) parameters in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CoinAngles {
    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// Game A coin, U(−51°, 45°, 0°).
    pub const GAME_A: CoinAngles = CoinAngles::new(-51.0, 45.0, 0.0);
    /// Game B coin, U(0°, 88°, −16°).
    pub const GAME_B: CoinAngles = CoinAngles::new(0.0, 88.0, -16.0);

    fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("coin angle {name} is not finite: {v}")));
            }
        }
        Ok(())
    }
}

/// Label of the single-coin operator played on one coin at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameLabel {
    A,
    B,
    /// Classical identity coin.
    I,
    /// Classical NOT coin.
    X,
}

impl GameLabel {
    pub fn as_char(self) -> char {
        match self {
            GameLabel::A => 'A',
            GameLabel::B => 'B',
            GameLabel::I => 'I',
            GameLabel::X => 'X',
        }
    }

    /// Parses a compact label string such as `"ABA"`.
    pub fn parse_vector(s: &str) -> Result<Vec<GameLabel>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| GameLabel::try_from(c))
            .collect()
    }

    pub fn format_vector(labels: &[GameLabel]) -> String {
        labels.iter().map(|l| l.as_char()).collect()
    }
}

impl TryFrom<char> for GameLabel {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'A' => Ok(GameLabel::A),
            'B' => Ok(GameLabel::B),
            'I' => Ok(GameLabel::I),
            'X' => Ok(GameLabel::X),
            other => Err(Error::invalid(format!("unknown game label `{other}`"))),
        }
    }
}

impl FromStr for GameLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => GameLabel::try_from(c),
            _ => Err(Error::invalid(format!("expected a single game label, got `{s}`"))),
        }
    }
}

impl fmt::Display for GameLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A 2×2 complex matrix acting on one coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinOperator {
    entries: [[Complex64; 2]; 2],
}

impl CoinOperator {
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::from_entries([[one, zero], [zero, one]])
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn matmul(&self, rhs: &CoinOperator) -> CoinOperator {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.entries[i][0] * rhs.entries[0][j] + self.entries[i][1] * rhs.entries[1][j];
            }
        }
        CoinOperator::from_entries(out)
    }

    pub fn adjoint(&self) -> CoinOperator {
        let e = &self.entries;
        CoinOperator::from_entries([[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]])
    }

    pub fn determinant(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// Largest entry-wise deviation of `U·U†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        MultiCoinOperator::from(*self).unitarity_error()
    }
}

/// Builds `[[e^{iα}cosβ, −e^{−iγ}sinβ], [e^{iγ}sinβ, e^{−iα}cosβ]]` with the
/// angles given in degrees.
pub fn su2_from_angles(angles: CoinAngles) -> Result<CoinOperator> {
    angles.validate()?;
    let alpha = angles.alpha.to_radians();
    let (sin_b, cos_b) = angles.beta.to_radians().sin_cos();
    let gamma = angles.gamma.to_radians();

    let phase = |theta: f64| Complex64::new(theta.cos(), theta.sin());
    Ok(CoinOperator::from_entries([
        [phase(alpha) * cos_b, -phase(-gamma) * sin_b],
        [phase(gamma) * sin_b, phase(-alpha) * cos_b],
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Game {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classical {
    Identity,
    Not,
}

/// The game coins A = U(−51, 45, 0) and B = U(0, 88, −16).
pub fn game_coin(game: Game) -> CoinOperator {
    let angles = match game {
        Game::A => CoinAngles::GAME_A,
        Game::B => CoinAngles::GAME_B,
    };
    su2_from_angles(angles).expect("game angles are finite")
}

pub fn classical_coin(kind: Classical) -> CoinOperator {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match kind {
        Classical::Identity => CoinOperator::identity(),
        Classical::Not => CoinOperator::from_entries([[zero, one], [one, zero]]),
    }
}

/// Resolves game labels to operators. Defaults to the standard A/B angles;
/// custom angles are accepted for exploration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameCoins {
    pub a: CoinAngles,
    pub b: CoinAngles,
}

impl Default for GameCoins {
    fn default() -> Self {
        Self {
            a: CoinAngles::GAME_A,
            b: CoinAngles::GAME_B,
        }
    }
}

impl GameCoins {
    pub fn operator(&self, label: GameLabel) -> Result<CoinOperator> {
        match label {
            GameLabel::A => su2_from_angles(self.a),
            GameLabel::B => su2_from_angles(self.b),
            GameLabel::I => Ok(classical_coin(Classical::Identity)),
            GameLabel::X => Ok(classical_coin(Classical::Not)),
        }
    }

    pub fn angles(&self, label: GameLabel) -> Option<CoinAngles> {
        match label {
            GameLabel::A => Some(self.a),
            GameLabel::B => Some(self.b),
            _ => None,
        }
    }

    /// Tensor product of the operators for a per-coin label vector.
    pub fn tensor_labels(&self, labels: &[GameLabel]) -> Result<MultiCoinOperator> {
        let factors = labels
            .iter()
            .map(|&l| self.operator(l))
            .collect::<Result<Vec<_>>>()?;
        tensor(&factors)
    }
}

/// Dense row-major `2^c × 2^c` operator on the joint coin space.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiCoinOperator {
    coin_count: usize,
    entries: Vec<Complex64>,
}

impl MultiCoinOperator {
    pub fn coin_count(&self) -> usize {
        self.coin_count
    }

    pub fn dim(&self) -> usize {
        1 << self.coin_count
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `out = self · input` for one coin-space vector.
    pub fn apply(&self, input: &[Complex64], out: &mut [Complex64]) {
        let dim = self.dim();
        debug_assert_eq!(input.len(), dim);
        debug_assert_eq!(out.len(), dim);
        for (row, slot) in self.entries.chunks_exact(dim).zip(out.iter_mut()) {
            *slot = row.iter().zip(input).map(|(m, v)| m * v).sum();
        }
    }

    pub fn unitarity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = (0..dim).map(|k| self.get(i, k) * self.get(j, k).conj()).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

impl From<CoinOperator> for MultiCoinOperator {
    fn from(op: CoinOperator) -> Self {
        Self {
            coin_count: 1,
            entries: op.entries.iter().flatten().copied().collect(),
        }
    }
}

/// Kronecker product of 1 to 3 single-coin operators; the first factor acts
/// on coin 1 (most significant bit).
pub fn tensor(factors: &[CoinOperator]) -> Result<MultiCoinOperator> {
    if factors.is_empty() || factors.len() > MAX_COINS {
        return Err(Error::invalid(format!(
            "tensor needs between 1 and {MAX_COINS} factors, got {}",
            factors.len()
        )));
    }
    let mut acc = MultiCoinOperator::from(factors[0]);
    for factor in &factors[1..] {
        let dim = acc.dim();
        let new_dim = dim * 2;
        let mut entries = vec![Complex64::new(0.0, 0.0); new_dim * new_dim];
        for i in 0..dim {
            for j in 0..dim {
                let a = acc.get(i, j);
                for k in 0..2 {
                    for l in 0..2 {
                        entries[(2 * i + k) * new_dim + (2 * j + l)] = a * factor.get(k, l);
                    }
                }
            }
        }
        acc = MultiCoinOperator {
            coin_count: acc.coin_count + 1,
            entries,
        };
    }
    Ok(acc)
}
