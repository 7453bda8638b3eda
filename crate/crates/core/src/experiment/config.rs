use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::coin::{CoinAngles, GameCoins, GameLabel, MAX_COINS};
use crate::engine::{
    schedule_alternating_multicoin, schedule_constant, schedule_periodic_q, schedule_random, GameSchedule,
};
use crate::error::{Error, Result};
use crate::shift::{preset, ShiftPreset, ShiftRule};
use crate::state::{init_basis, init_single_default, init_two_coin_theta, WalkState};

const KNOWN_KEYS: &[&str] = &[
    "name", "coin_count", "initial", "theta_pi", "shift", "schedule", "q", "first", "second", "labels", "seed",
    "steps", "window", "coin_a", "coin_b", "format", "out",
];

pub const DEFAULT_WINDOW: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialSpec {
    /// Single coin `(|0⟩ − i|1⟩)/√2`.
    Default,
    /// Two coins `cos(θ/2)|10⟩ + i·sin(θ/2)|01⟩` with θ = `theta_pi`·π.
    Theta { theta_pi: f64 },
    /// Computational basis state, coin 1 first.
    Basis { label: String },
}

impl InitialSpec {
    pub fn describe(&self) -> String {
        match self {
            InitialSpec::Default => "default".to_string(),
            InitialSpec::Theta { theta_pi } => format!("theta={theta_pi}pi"),
            InitialSpec::Basis { label } => format!("|{label}>"),
        }
    }

    pub fn build(&self, coin_count: usize, radius: usize) -> Result<WalkState> {
        match self {
            InitialSpec::Default => Ok(init_single_default(radius)),
            InitialSpec::Theta { theta_pi } => init_two_coin_theta(theta_pi * PI, radius),
            InitialSpec::Basis { label } => init_basis(coin_count, label, radius),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScheduleSpec {
    Periodic { q: usize },
    Alternating { first: Vec<GameLabel>, second: Vec<GameLabel> },
    Constant { labels: Vec<GameLabel> },
    Random { first: Vec<GameLabel>, second: Vec<GameLabel>, seed: u64 },
}

impl ScheduleSpec {
    pub fn build(&self, coin_count: usize) -> Result<GameSchedule> {
        match self {
            ScheduleSpec::Periodic { q } => schedule_periodic_q(*q),
            ScheduleSpec::Alternating { first, second } => schedule_alternating_multicoin(coin_count, first, second),
            ScheduleSpec::Constant { labels } => schedule_constant(coin_count, labels),
            ScheduleSpec::Random { first, second, seed } => schedule_random(coin_count, first, second, *seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::invalid(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

/// Everything needed to reproduce one walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub coin_count: usize,
    pub initial: InitialSpec,
    pub shift: ShiftPreset,
    pub schedule: ScheduleSpec,
    pub steps: usize,
    pub window: usize,
    pub coins: GameCoins,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

fn get_str<'a>(table: &'a Table, key: &str) -> Result<Option<&'a str>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.as_str())),
        Some(other) => Err(Error::config(key, format!("expected a string, got {}", other.type_str()))),
    }
}

fn get_uint(table: &Table, key: &str) -> Result<Option<u64>> {
    match table.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
        Some(Value::Integer(i)) => Err(Error::config(key, format!("must be non-negative, got {i}"))),
        Some(other) => Err(Error::config(key, format!("expected an integer, got {}", other.type_str()))),
    }
}

fn get_float(table: &Table, key: &str) -> Result<Option<f64>> {
    let v = match table.get(key) {
        None => return Ok(None),
        Some(Value::Float(f)) => *f,
        Some(Value::Integer(i)) => *i as f64,
        Some(other) => return Err(Error::config(key, format!("expected a number, got {}", other.type_str()))),
    };
    if !v.is_finite() {
        return Err(Error::config(key, "must be finite"));
    }
    Ok(Some(v))
}

fn get_angles(table: &Table, key: &str) -> Result<Option<CoinAngles>> {
    let Some(value) = table.get(key) else {
        return Ok(None);
    };
    let arr = value
        .as_array()
        .ok_or_else(|| Error::config(key, "expected [alpha, beta, gamma] in degrees"))?;
    let nums = arr
        .iter()
        .map(|v| match v {
            Value::Float(f) if f.is_finite() => Ok(*f),
            Value::Integer(i) => Ok(*i as f64),
            _ => Err(Error::config(key, "angles must be finite numbers")),
        })
        .collect::<Result<Vec<_>>>()?;
    match nums.as_slice() {
        [a, b, g] => Ok(Some(CoinAngles::new(*a, *b, *g))),
        _ => Err(Error::config(key, format!("expected 3 angles, got {}", nums.len()))),
    }
}

fn labels(table: &Table, key: &str) -> Result<Vec<GameLabel>> {
    let s = get_str(table, key)?.ok_or_else(|| Error::config(key, "missing"))?;
    GameLabel::parse_vector(s).map_err(|e| Error::config(key, e.to_string()))
}

fn require<T>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::config(key, "missing"))
}

impl ExperimentConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Parses a flat key/value TOML document and validates it.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| {
            let msg = e.message().to_string();
            Error::config("<document>", msg)
        })?;
        if let Some(unknown) = table.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(Error::config(unknown, "unknown key"));
        }

        let coin_count = require(get_uint(&table, "coin_count")?, "coin_count")? as usize;

        let initial = match (get_str(&table, "initial")?, get_float(&table, "theta_pi")?) {
            (Some(_), Some(_)) => return Err(Error::config("theta_pi", "give either `initial` or `theta_pi`, not both")),
            (None, Some(theta_pi)) => InitialSpec::Theta { theta_pi },
            (Some("default"), None) => InitialSpec::Default,
            (Some(label), None) => InitialSpec::Basis {
                label: label.to_string(),
            },
            (None, None) => return Err(Error::config("initial", "missing (or give `theta_pi`)")),
        };

        let shift: ShiftPreset = require(get_str(&table, "shift")?, "shift")?
            .parse()
            .map_err(|e: Error| Error::config("shift", e.to_string()))?;

        let schedule = match require(get_str(&table, "schedule")?, "schedule")? {
            "periodic" => ScheduleSpec::Periodic {
                q: require(get_uint(&table, "q")?, "q")? as usize,
            },
            "alternating" => ScheduleSpec::Alternating {
                first: labels(&table, "first")?,
                second: labels(&table, "second")?,
            },
            "constant" => ScheduleSpec::Constant {
                labels: labels(&table, "labels")?,
            },
            "random" => ScheduleSpec::Random {
                first: labels(&table, "first")?,
                second: labels(&table, "second")?,
                seed: require(get_uint(&table, "seed")?, "seed")?,
            },
            other => {
                return Err(Error::config(
                    "schedule",
                    format!("unknown schedule `{other}` (expected periodic, alternating, constant or random)"),
                ))
            }
        };

        let steps = require(get_uint(&table, "steps")?, "steps")? as usize;
        let window = get_uint(&table, "window")?.map(|w| w as usize).unwrap_or(DEFAULT_WINDOW.min(steps));

        let defaults = GameCoins::default();
        let coins = GameCoins {
            a: get_angles(&table, "coin_a")?.unwrap_or(defaults.a),
            b: get_angles(&table, "coin_b")?.unwrap_or(defaults.b),
        };

        let format = match get_str(&table, "format")? {
            None => OutputFormat::default(),
            Some(s) => s.parse().map_err(|e: Error| Error::config("format", e.to_string()))?,
        };

        let config = ExperimentConfig {
            name: get_str(&table, "name")?.unwrap_or("custom").to_string(),
            coin_count,
            initial,
            shift,
            schedule,
            steps,
            window,
            coins,
            format,
            out: get_str(&table, "out")?.map(PathBuf::from),
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks internal consistency, naming the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.coin_count == 0 || self.coin_count > MAX_COINS {
            return Err(Error::config("coin_count", format!("must be 1 to {MAX_COINS}, got {}", self.coin_count)));
        }
        match &self.initial {
            InitialSpec::Default if self.coin_count != 1 => {
                return Err(Error::config("initial", "`default` is a single-coin state; coin_count must be 1"))
            }
            InitialSpec::Theta { .. } if self.coin_count != 2 => {
                return Err(Error::config("theta_pi", "theta states need coin_count = 2"))
            }
            InitialSpec::Basis { label } => {
                if label.chars().count() != self.coin_count {
                    return Err(Error::config(
                        "initial",
                        format!("basis `{label}` has {} bits but coin_count is {}", label.chars().count(), self.coin_count),
                    ));
                }
                if !label.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::config("initial", format!("basis `{label}` must be a bit string or `default`")));
                }
            }
            _ => {}
        }
        if preset(self.shift).coin_count() != self.coin_count {
            return Err(Error::config(
                "shift",
                format!("`{}` is for {} coin(s), coin_count is {}", self.shift, preset(self.shift).coin_count(), self.coin_count),
            ));
        }
        let vector_len = |key: &str, v: &[GameLabel]| {
            if v.len() == self.coin_count {
                Ok(())
            } else {
                Err(Error::config(key, format!("has {} labels, coin_count is {}", v.len(), self.coin_count)))
            }
        };
        match &self.schedule {
            ScheduleSpec::Periodic { q } => {
                if self.coin_count != 1 {
                    return Err(Error::config("schedule", "periodic schedules are single-coin"));
                }
                if *q == 0 {
                    return Err(Error::config("q", "must be at least 1"));
                }
            }
            ScheduleSpec::Alternating { first, second } | ScheduleSpec::Random { first, second, .. } => {
                vector_len("first", first)?;
                vector_len("second", second)?;
            }
            ScheduleSpec::Constant { labels } => vector_len("labels", labels)?,
        }
        if self.steps == 0 {
            return Err(Error::config("steps", "must be at least 1"));
        }
        if self.window == 0 || self.window > self.steps {
            return Err(Error::config("window", format!("must be between 1 and steps ({})", self.steps)));
        }
        Ok(())
    }

    pub fn shift_rule(&self) -> ShiftRule {
        preset(self.shift)
    }

    pub fn game_schedule(&self) -> Result<GameSchedule> {
        Ok(self.schedule.build(self.coin_count)?.with_coins(self.coins))
    }

    /// Renders the config in the same flat format [`from_toml_str`] reads.
    ///
    /// [`from_toml_str`]: ExperimentConfig::from_toml_str
    pub fn to_toml_string(&self) -> String {
        let fmt = GameLabel::format_vector;
        let mut s = String::new();
        let _ = writeln!(s, "name = {:?}", self.name);
        let _ = writeln!(s, "coin_count = {}", self.coin_count);
        match &self.initial {
            InitialSpec::Default => {
                let _ = writeln!(s, "initial = \"default\"");
            }
            InitialSpec::Theta { theta_pi } => {
                let _ = writeln!(s, "theta_pi = {theta_pi:?}");
            }
            InitialSpec::Basis { label } => {
                let _ = writeln!(s, "initial = {label:?}");
            }
        }
        let _ = writeln!(s, "shift = \"{}\"", self.shift);
        match &self.schedule {
            ScheduleSpec::Periodic { q } => {
                let _ = writeln!(s, "schedule = \"periodic\"\nq = {q}");
            }
            ScheduleSpec::Alternating { first, second } => {
                let _ = writeln!(s, "schedule = \"alternating\"\nfirst = \"{}\"\nsecond = \"{}\"", fmt(first), fmt(second));
            }
            ScheduleSpec::Constant { labels } => {
                let _ = writeln!(s, "schedule = \"constant\"\nlabels = \"{}\"", fmt(labels));
            }
            ScheduleSpec::Random { first, second, seed } => {
                let _ = writeln!(
                    s,
                    "schedule = \"random\"\nfirst = \"{}\"\nsecond = \"{}\"\nseed = {seed}",
                    fmt(first),
                    fmt(second)
                );
            }
        }
        let _ = writeln!(s, "steps = {}\nwindow = {}", self.steps, self.window);
        let defaults = GameCoins::default();
        for (key, angles, default) in [("coin_a", self.coins.a, defaults.a), ("coin_b", self.coins.b, defaults.b)] {
            if angles != default {
                let _ = writeln!(s, "{key} = [{:?}, {:?}, {:?}]", angles.alpha, angles.beta, angles.gamma);
            }
        }
        let _ = writeln!(
            s,
            "format = \"{}\"",
            match self.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            }
        );
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {:?}", out.display().to_string());
        }
        s
    }
}
