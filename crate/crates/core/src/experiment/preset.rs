use crate::coin::GameCoins;
use crate::coin::GameLabel::{self, A, B, I, X};
use crate::shift::ShiftPreset;

use super::config::{ExperimentConfig, InitialSpec, OutputFormat, ScheduleSpec, DEFAULT_WINDOW};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub grid: usize,
    pub steps: usize,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetKind {
    Walk(ExperimentConfig),
    Sweep(SweepSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: PresetKind,
}

const SINGLE_STEPS: usize = 1600;
const MULTI_STEPS: usize = 800;

fn walk(
    name: &'static str,
    description: &'static str,
    coin_count: usize,
    initial: InitialSpec,
    shift: ShiftPreset,
    schedule: ScheduleSpec,
    steps: usize,
) -> Preset {
    Preset {
        name,
        description,
        kind: PresetKind::Walk(ExperimentConfig {
            name: name.to_string(),
            coin_count,
            initial,
            shift,
            schedule,
            steps,
            window: DEFAULT_WINDOW,
            coins: GameCoins::default(),
            format: OutputFormat::Csv,
            out: None,
        }),
    }
}

fn constant(labels: &[GameLabel]) -> ScheduleSpec {
    ScheduleSpec::Constant { labels: labels.to_vec() }
}

fn alternating(first: &[GameLabel], second: &[GameLabel]) -> ScheduleSpec {
    ScheduleSpec::Alternating {
        first: first.to_vec(),
        second: second.to_vec(),
    }
}

fn basis(label: &str) -> InitialSpec {
    InitialSpec::Basis { label: label.to_string() }
}

fn theta(theta_pi: f64) -> InitialSpec {
    InitialSpec::Theta { theta_pi }
}

/// One preset per figure panel, plus the classical-coin checks.
pub fn presets() -> Vec<Preset> {
    use InitialSpec::Default as Single;
    use ShiftPreset::{OneWait, ThreeCoin, TwoWait};
    let s = ShiftPreset::Single;
    let (ab, ba) = ([A, B], [B, A]);
    let (aba, bab) = ([A, B, A], [B, A, B]);

    vec![
        walk("fig2a_A", "single coin, constant A", 1, Single, s, constant(&[A]), SINGLE_STEPS),
        walk("fig2a_B", "single coin, constant B", 1, Single, s, constant(&[B]), SINGLE_STEPS),
        walk("fig2b", "single coin, periodic ABBB (q = 4)", 1, Single, s, ScheduleSpec::Periodic { q: 4 }, SINGLE_STEPS),
        walk("fig3a", "theta = pi/4, alternating AB/BA, two-wait shift", 2, theta(0.25), TwoWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig3b", "theta = pi/4, constant AB, two-wait shift", 2, theta(0.25), TwoWait, constant(&ab), MULTI_STEPS),
        walk("fig3c", "theta = 0, alternating AB/BA, two-wait shift", 2, theta(0.0), TwoWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig3d", "theta = 0, constant AB, two-wait shift", 2, theta(0.0), TwoWait, constant(&ab), MULTI_STEPS),
        Preset {
            name: "fig4",
            description: "theta sweep over [0, 2pi): concurrence and tail margins",
            kind: PresetKind::Sweep(SweepSpec {
                grid: 64,
                steps: MULTI_STEPS,
                window: DEFAULT_WINDOW,
            }),
        },
        walk("fig5a", "|00>, alternating AB/BA, two-wait shift", 2, basis("00"), TwoWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig5b", "|11>, alternating AB/BA, two-wait shift", 2, basis("11"), TwoWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig5c", "|00>, constant AB, two-wait shift", 2, basis("00"), TwoWait, constant(&ab), MULTI_STEPS),
        walk("fig5d", "|11>, constant AB, two-wait shift", 2, basis("11"), TwoWait, constant(&ab), MULTI_STEPS),
        walk("fig6a", "|00>, alternating AB/BA, one-wait shift", 2, basis("00"), OneWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig6b", "|11>, alternating AB/BA, one-wait shift", 2, basis("11"), OneWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig6c", "|00>, constant AB, one-wait shift", 2, basis("00"), OneWait, constant(&ab), MULTI_STEPS),
        walk("fig6d", "|11>, constant AB, one-wait shift", 2, basis("11"), OneWait, constant(&ab), MULTI_STEPS),
        walk("fig6_10_alt", "|10>, alternating AB/BA, one-wait shift", 2, basis("10"), OneWait, alternating(&ab, &ba), MULTI_STEPS),
        walk("fig6_10_const", "|10>, constant AB, one-wait shift", 2, basis("10"), OneWait, constant(&ab), MULTI_STEPS),
        walk("fig7a", "|010>, alternating ABA/BAB, three-coin shift", 3, basis("010"), ThreeCoin, alternating(&aba, &bab), MULTI_STEPS),
        walk("fig7b", "|010>, constant ABA, three-coin shift", 3, basis("010"), ThreeCoin, constant(&aba), MULTI_STEPS),
        walk("fig7c", "|000>, alternating ABA/BAB, three-coin shift", 3, basis("000"), ThreeCoin, alternating(&aba, &bab), MULTI_STEPS),
        walk("fig7d", "|000>, constant ABA, three-coin shift", 3, basis("000"), ThreeCoin, constant(&aba), MULTI_STEPS),
        walk("classical", "single coin, alternating identity/NOT", 1, Single, s, alternating(&[I], &[X]), SINGLE_STEPS),
        walk("classical_i", "single coin, constant identity", 1, Single, s, constant(&[I]), SINGLE_STEPS),
        walk("classical_x", "single coin, constant NOT", 1, Single, s, constant(&[X]), SINGLE_STEPS),
    ]
}

pub fn find_preset(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_unique_and_configs_valid() {
        let all = presets();
        let names: HashSet<_> = all.iter().map(|p| p.name).collect();
        assert_eq!(names.len(), all.len());
        for p in &all {
            if let PresetKind::Walk(cfg) = &p.kind {
                cfg.validate().unwrap_or_else(|e| panic!("{}: {e}", p.name));
                assert_eq!(cfg.name, p.name);
            }
        }
        assert!(find_preset("fig3a").is_some());
        assert!(find_preset("fig99").is_none());
    }
}
