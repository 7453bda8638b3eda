//! Game schedules and the step/run loop `U_T = S · (I ⊗ C_t)`.

use num_complex::Complex64;
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coin::{GameCoins, GameLabel, MultiCoinOperator, MAX_COINS};
use crate::error::{Error, Result};
use crate::shift::{apply_shift, ShiftRule};
use crate::state::{metrics, Metrics, WalkState, NORM_TOL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// Single coin: A when `t ≡ 0 (mod q)`, B otherwise.
    Periodic { q: usize },
    /// `first` on even steps, `second` on odd steps.
    Alternating {
        first: Vec<GameLabel>,
        second: Vec<GameLabel>,
    },
    Constant { labels: Vec<GameLabel> },
    /// Each step independently plays `first` or `second` with equal
    /// probability, drawn from a seeded stream indexed by step.
    Random {
        first: Vec<GameLabel>,
        second: Vec<GameLabel>,
        seed: u64,
    },
}

/// Deterministic map from 0-based step index to per-coin game labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSchedule {
    coin_count: usize,
    kind: ScheduleKind,
    #[serde(default)]
    coins: GameCoins,
}

fn check_vector(coin_count: usize, labels: &[GameLabel], what: &str) -> Result<()> {
    if coin_count == 0 || coin_count > MAX_COINS {
        return Err(Error::invalid(format!(
            "coin count must be between 1 and {MAX_COINS}, got {coin_count}"
        )));
    }
    if labels.len() != coin_count {
        return Err(Error::invalid(format!(
            "{what} has {} labels but coin count is {coin_count}",
            labels.len()
        )));
    }
    Ok(())
}

pub fn schedule_periodic_q(q: usize) -> Result<GameSchedule> {
    if q < 1 {
        return Err(Error::invalid("period q must be at least 1"));
    }
    Ok(GameSchedule {
        coin_count: 1,
        kind: ScheduleKind::Periodic { q },
        coins: GameCoins::default(),
    })
}

pub fn schedule_alternating_multicoin(
    coin_count: usize,
    first: &[GameLabel],
    second: &[GameLabel],
) -> Result<GameSchedule> {
    check_vector(coin_count, first, "first vector")?;
    check_vector(coin_count, second, "second vector")?;
    Ok(GameSchedule {
        coin_count,
        kind: ScheduleKind::Alternating {
            first: first.to_vec(),
            second: second.to_vec(),
        },
        coins: GameCoins::default(),
    })
}

pub fn schedule_constant(coin_count: usize, labels: &[GameLabel]) -> Result<GameSchedule> {
    check_vector(coin_count, labels, "label vector")?;
    Ok(GameSchedule {
        coin_count,
        kind: ScheduleKind::Constant {
            labels: labels.to_vec(),
        },
        coins: GameCoins::default(),
    })
}

/// Seeded random choice between two label vectors. Exploration only.
pub fn schedule_random(
    coin_count: usize,
    first: &[GameLabel],
    second: &[GameLabel],
    seed: u64,
) -> Result<GameSchedule> {
    check_vector(coin_count, first, "first vector")?;
    check_vector(coin_count, second, "second vector")?;
    Ok(GameSchedule {
        coin_count,
        kind: ScheduleKind::Random {
            first: first.to_vec(),
            second: second.to_vec(),
            seed,
        },
        coins: GameCoins::default(),
    })
}

const PERIODIC_A: [GameLabel; 1] = [GameLabel::A];
const PERIODIC_B: [GameLabel; 1] = [GameLabel::B];

impl GameSchedule {
    pub fn with_coins(mut self, coins: GameCoins) -> Self {
        self.coins = coins;
        self
    }

    pub fn coin_count(&self) -> usize {
        self.coin_count
    }

    pub fn kind(&self) -> &ScheduleKind {
        &self.kind
    }

    pub fn coins(&self) -> &GameCoins {
        &self.coins
    }

    pub fn labels_at(&self, t: usize) -> &[GameLabel] {
        match &self.kind {
            ScheduleKind::Periodic { q } => {
                if t % q == 0 {
                    &PERIODIC_A
                } else {
                    &PERIODIC_B
                }
            }
            ScheduleKind::Alternating { first, second } => {
                if t % 2 == 0 {
                    first
                } else {
                    second
                }
            }
            ScheduleKind::Constant { labels } => labels,
            ScheduleKind::Random { first, second, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_word_pos(2 * t as u128);
                if rng.next_u64() & 1 == 0 {
                    first
                } else {
                    second
                }
            }
        }
    }

    /// Joint coin operator played at step `t`.
    pub fn operator_at(&self, t: usize) -> Result<MultiCoinOperator> {
        self.coins.tensor_labels(self.labels_at(t))
    }

    /// Compact descriptor, e.g. `alternating_AB_BA` or `periodic_q4`.
    pub fn name(&self) -> String {
        let fmt = GameLabel::format_vector;
        match &self.kind {
            ScheduleKind::Periodic { q } => format!("periodic_q{q}"),
            ScheduleKind::Alternating { first, second } => {
                format!("alternating_{}_{}", fmt(first), fmt(second))
            }
            ScheduleKind::Constant { labels } => format!("constant_{}", fmt(labels)),
            ScheduleKind::Random { first, second, seed } => {
                format!("random_{}_{}_seed{seed}", fmt(first), fmt(second))
            }
        }
    }

    /// The label vector when every step plays the same thing.
    pub fn constant_labels(&self) -> Option<&[GameLabel]> {
        match &self.kind {
            ScheduleKind::Constant { labels } => Some(labels),
            ScheduleKind::Periodic { q: 1 } => Some(&PERIODIC_A),
            _ => None,
        }
    }
}

/// Applies `coin` to the coin register at every occupied site.
pub fn apply_coin(state: &mut WalkState, coin: &MultiCoinOperator) -> Result<()> {
    if coin.coin_count() != state.coin_count() {
        return Err(Error::invalid(format!(
            "coin operator acts on {} coin(s) but the state has {}",
            coin.coin_count(),
            state.coin_count()
        )));
    }
    let dim = state.coin_dim();
    let r = state.radius() as i64;
    let e = state.extent() as i64;
    let mut scratch = [Complex64::new(0.0, 0.0); 1 << MAX_COINS];
    let scratch = &mut scratch[..dim];
    let amps = state.amplitudes_mut();
    for n in -e..=e {
        let start = ((n + r) as usize) * dim;
        let row = &mut amps[start..start + dim];
        coin.apply(row, scratch);
        row.copy_from_slice(scratch);
    }
    Ok(())
}

/// One step at 0-based index `t`: coin for step `t`, then the shift.
pub fn step(state: &WalkState, schedule: &GameSchedule, rule: &ShiftRule, t: usize) -> Result<WalkState> {
    if schedule.coin_count() != state.coin_count() {
        return Err(Error::invalid(format!(
            "schedule is for {} coin(s) but the state has {}",
            schedule.coin_count(),
            state.coin_count()
        )));
    }
    let mut next = state.clone();
    apply_coin(&mut next, &schedule.operator_at(t)?)?;
    apply_shift(&next, rule)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDescriptor {
    pub schedule: String,
    pub shift: String,
    pub initial: String,
    pub steps: usize,
}

/// Metrics after each step `t = 1..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsSeries {
    pub descriptor: RunDescriptor,
    pub rows: Vec<Metrics>,
}

impl MetricsSeries {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn margins(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|m| m.margin)
    }

    pub fn last(&self) -> Option<&Metrics> {
        self.rows.last()
    }
}

/// Evolves `initial` for `steps` steps and returns the series together with
/// the final state.
pub fn run_with_state(
    initial: &WalkState,
    initial_label: &str,
    schedule: &GameSchedule,
    rule: &ShiftRule,
    steps: usize,
) -> Result<(MetricsSeries, WalkState)> {
    if rule.coin_count() != initial.coin_count() {
        return Err(Error::invalid(format!(
            "shift `{}` is for {} coin(s) but the state has {}",
            rule.name(),
            rule.coin_count(),
            initial.coin_count()
        )));
    }
    let required = initial.extent() + rule.max_displacement() * steps;
    if required > initial.radius() {
        return Err(Error::Capacity {
            required,
            radius: initial.radius(),
        });
    }

    let mut state = initial.clone();
    let mut rows = Vec::with_capacity(steps);
    for t in 0..steps {
        state = step(&state, schedule, rule, t)?;
        debug_assert!(
            (state.norm_sqr() - 1.0).abs() < NORM_TOL,
            "norm drifted to {} at step {}",
            state.norm_sqr(),
            t + 1
        );
        rows.push(metrics(&state));
    }
    let series = MetricsSeries {
        descriptor: RunDescriptor {
            schedule: schedule.name(),
            shift: rule.name().to_string(),
            initial: initial_label.to_string(),
            steps,
        },
        rows,
    };
    Ok((series, state))
}

pub fn run(initial: &WalkState, schedule: &GameSchedule, rule: &ShiftRule, steps: usize) -> Result<MetricsSeries> {
    run_with_state(initial, "custom", schedule, rule, steps).map(|(series, _)| series)
}

/// Lattice radius that fits an `steps`-step run from the origin.
pub fn radius_for(rule: &ShiftRule, steps: usize) -> usize {
    rule.max_displacement() * steps + 1
}
