mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use parrondo_walk::coin::GameLabel;
use parrondo_walk::engine::{radius_for, run, schedule_alternating_multicoin, schedule_constant, step};
use parrondo_walk::experiment::{presets, InitialSpec, PresetKind, ScheduleSpec};
use parrondo_walk::shift::{preset, ShiftPreset};
use parrondo_walk::state::{init_basis, metrics, WalkState};

use common::dense_margins;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn oracle_initial(spec: &InitialSpec, coin_count: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << coin_count];
    match spec {
        InitialSpec::Default => {
            v[0] = c(FRAC_1_SQRT_2, 0.0);
            v[1] = c(0.0, -FRAC_1_SQRT_2);
        }
        InitialSpec::Theta { theta_pi } => {
            let theta = theta_pi * PI;
            v[2] = c((theta / 2.0).cos(), 0.0);
            v[1] = c(0.0, (theta / 2.0).sin());
        }
        InitialSpec::Basis { label } => {
            v[usize::from_str_radix(label, 2).unwrap()] = c(1.0, 0.0);
        }
    }
    v
}

fn oracle_labels(spec: &ScheduleSpec, t: usize) -> String {
    let s = |v: &[GameLabel]| v.iter().map(|l| l.as_char()).collect::<String>();
    match spec {
        ScheduleSpec::Periodic { q } => if t % q == 0 { "A" } else { "B" }.to_string(),
        ScheduleSpec::Alternating { first, second } => s(if t % 2 == 0 { first } else { second }),
        ScheduleSpec::Constant { labels } => s(labels),
        ScheduleSpec::Random { .. } => unreachable!("no random presets"),
    }
}

#[test]
fn one_two_coin_step_matches_hand_calculation() {
    // |10⟩ under A⊗B: |00⟩ gets A01·B00 and moves right, |11⟩ gets A11·B10
    // and moves left, so margin = ½cos²88° − ½sin²88° = ½cos176°.
    let s0 = init_basis(2, "10", 2).unwrap();
    let sched = schedule_constant(2, &[GameLabel::A, GameLabel::B]).unwrap();
    let s1 = step(&s0, &sched, &preset(ShiftPreset::TwoWait), 0).unwrap();
    let m = metrics(&s1);
    assert!((m.margin - (-0.4987820251299121)).abs() < 1e-12, "{}", m.margin);

    let dense = dense_margins(&oracle_initial(&InitialSpec::Basis { label: "10".into() }, 2), |_| "AB".into(), "two_wait", 1);
    assert!((dense[0] - m.margin).abs() < 1e-12);
}

#[test]
fn every_preset_matches_dense_evolution_for_five_steps() {
    const N: usize = 5;
    let mut checked = 0;
    for p in presets() {
        let PresetKind::Walk(cfg) = p.kind else { continue };
        let rule = cfg.shift_rule();
        let initial = cfg.initial.build(cfg.coin_count, radius_for(&rule, N)).unwrap();
        let series = run(&initial, &cfg.game_schedule().unwrap(), &rule, N).unwrap();

        let expected = dense_margins(
            &oracle_initial(&cfg.initial, cfg.coin_count),
            |t| oracle_labels(&cfg.schedule, t),
            rule.name(),
            N,
        );
        for (t, (got, want)) in series.margins().zip(&expected).enumerate() {
            assert!((got - want).abs() < 1e-12, "{} step {}: {got} vs {want}", p.name, t + 1);
        }
        checked += 1;
    }
    assert!(checked >= 24);
}

#[test]
fn random_two_coin_states_match_dense_evolution() {
    // Deterministic pseudo-random coin states and schedules, c ≤ 2, N ≤ 5.
    let mut seed = 0x9e3779b97f4a7c15_u64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    for trial in 0..20 {
        let coin_count = 1 + trial % 2;
        let shift = match (coin_count, trial % 4) {
            (1, _) => "single",
            (_, 0 | 1) => "two_wait",
            _ => "one_wait",
        };
        let mut amps: Vec<Complex64> = (0..1 << coin_count).map(|_| c(next(), next())).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        let pool = ['A', 'B', 'I', 'X'];
        let labels: Vec<String> = (0..5)
            .map(|_| (0..coin_count).map(|_| pool[((next() + 0.5) * 3.999) as usize]).collect())
            .collect();

        let rule = preset(shift.parse().unwrap());
        let steps = 1 + trial % 5;
        let mut state = WalkState::at_origin(&amps, radius_for(&rule, steps)).unwrap();
        let mut got = Vec::new();
        for (t, l) in labels.iter().enumerate().take(steps) {
            let v = GameLabel::parse_vector(l).unwrap();
            let sched = schedule_alternating_multicoin(coin_count, &v, &v).unwrap();
            state = step(&state, &sched, &rule, t).unwrap();
            got.push(metrics(&state).margin);
        }
        let want = dense_margins(&amps, |t| labels[t].clone(), shift, steps);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "trial {trial}: {g} vs {w}");
        }
    }
}
