//! Correlation and bound invariants on the state families and on random states.

use eurb::bounds::{
    adaptive_complementarity, bound_l0, bound_l1, bound_l3, complementarity, full_report, game_probability,
    lhs_fano, optimize_settings, GameSpec,
};
use eurb::correlations::{
    classical_gain, classical_information, extractable_classical_information, luo_classical_information,
    quantum_discord,
};
use eurb::measurement::p_different;
use eurb::states::{self, random_mub_pair, random_observable, random_state};
use eurb::{DensityMatrix, Observable, Subsystem};

fn grid() -> impl Iterator<Item = f64> {
    (0..=100).map(|k| k as f64 / 100.0)
}

fn z() -> Observable<f64> {
    Observable::z()
}

fn x() -> Observable<f64> {
    Observable::x()
}

fn h(x: f64) -> f64 {
    eurb::entropy::binary_entropy(x).unwrap()
}

/// Each family at the settings used for it in the worked examples.
type Case = (String, DensityMatrix<f64>, Observable<f64>, Observable<f64>);

fn named_families() -> Vec<Case> {
    let mut out = Vec::new();
    for t in grid() {
        out.push((format!("werner {t}"), states::werner(t).unwrap(), z(), x()));
        out.push((format!("bd {t}"), states::bell_diagonal(t).unwrap(), z(), Observable::y()));
        out.push((format!("pe {t}"), states::pure_entangled(t).unwrap(), z(), x()));
        out.push((format!("classical {t}"), states::classical_state(t).unwrap(), z(), x()));
    }
    out.push(("mm".into(), states::mixed_marginal(0.5, -0.2, -0.3).unwrap(), z(), x()));
    out
}

#[test]
fn bound_ordering_on_families() {
    for (name, rho, r, s) in named_families() {
        let rep = full_report(&rho, &r, &s, Subsystem::B).unwrap();
        assert!(rep.l1 <= rep.l2 + 1e-7, "{name}: {rep:?}");
        assert!(rep.l2 <= rep.l4 + 1e-6, "{name}: {rep:?}");
        assert!((rep.l3 - rep.l4).abs() <= 1e-6, "{name}: {rep:?}");
        assert!(rep.l0 >= rep.l1 - 1e-7, "{name}: {rep:?}");
        assert_eq!(rep.l3, rep.lhs_fano);
    }
}

#[test]
fn classical_information_dominates_samples() {
    for seed in 0..40u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let best = classical_information(&rho, side).unwrap();
            assert!(best.converged);
            for k in 0..25 {
                let o = random_observable(seed * 1000 + k);
                assert!(best.value >= classical_gain(&rho, &o, side).unwrap() - 1e-7, "seed {seed}");
            }
        }
    }
}

#[test]
fn discord_is_nonnegative() {
    for seed in 0..500u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        let d = quantum_discord(&rho, Subsystem::B).unwrap();
        assert!(d.value >= -1e-7, "seed {seed}: {d:?}");
    }
}

#[test]
fn extractable_bounded_by_one_sided_gain() {
    for seed in 0..300u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        let o = random_observable(seed + 77);
        let ecr = extractable_classical_information(&rho, &o);
        assert!((-1e-9..=1.0 + 1e-9).contains(&ecr));
        assert!(ecr <= classical_gain(&rho, &o, Subsystem::B).unwrap() + 1e-7, "seed {seed}");
    }
}

#[test]
fn werner_gain_is_direction_independent() {
    for p in [0.1, 0.5, 0.723, 0.95] {
        let w = states::werner(p).unwrap();
        let gains: Vec<f64> = (0..100)
            .map(|k| classical_gain(&w, &random_observable(k), Subsystem::B).unwrap())
            .collect();
        let spread = gains.iter().cloned().fold(f64::MIN, f64::max) - gains.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread <= 1e-7);
    }
}

#[test]
fn classical_information_matches_luo_closed_form() {
    for (cx, cy, cz) in [(0.5, -0.2, -0.3), (0.0, 0.0, 0.0), (-1.0, -1.0, -1.0), (0.3, 0.3, -0.1), (-0.6, 0.2, 0.1)] {
        let rho = states::mixed_marginal(cx, cy, cz).unwrap();
        let num = classical_information(&rho, Subsystem::B).unwrap();
        let luo: f64 = luo_classical_information(cx, cy, cz).unwrap();
        assert!((num.value - luo).abs() < 1e-6, "({cx},{cy},{cz}): {} vs {luo}", num.value);
    }
}

#[test]
fn game_probability_is_disagreement() {
    for seed in 0..200u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        let o = random_observable(seed + 5);
        let g = game_probability(&rho, &GameSpec::equal_settings_disagreement(o));
        assert!((g - p_different(&rho, &o)).abs() <= 1e-12);
    }
}

#[test]
fn l3_is_fano_sum() {
    for seed in 0..100u64 {
        let rho = random_state::<f64>(seed, 4).unwrap();
        let (r, s) = random_mub_pair(seed);
        assert!((bound_l3(&rho, &r, &s) - lhs_fano(&rho, &r, &s)).abs() <= 1e-12);
    }
}

#[test]
fn adaptive_complementarity_uniform_weights() {
    let half = states::maximally_mixed::<f64>(2).unwrap();
    for seed in 0..50u64 {
        let r = random_observable(seed);
        let s = random_observable(seed + 500);
        let expect = (1.0 / complementarity::<f64>(&r, &s)).log2();
        assert!((adaptive_complementarity(&half, &r, &s).unwrap() - expect).abs() < 1e-9);
        assert!((adaptive_complementarity(&half, &s, &r).unwrap() - expect).abs() < 1e-9);
    }
}

#[test]
fn classical_strategy_never_beats_memory_on_families() {
    for (name, rho, r, s) in named_families() {
        let l0 = bound_l0(&rho, &r, &s, Subsystem::B).unwrap();
        let l1 = bound_l1(&rho, &r, &s).unwrap();
        assert!(l0 >= l1 - 1e-7, "{name}");
    }
}

#[test]
fn optimal_settings_for_werner_are_isotropic() {
    let p = 0.723;
    let w = states::werner(p).unwrap();
    let expect = 2.0 * h((1.0 - p) / 2.0);
    let values: Vec<f64> = (0..1000).map(|k| {
        let (r, s) = random_mub_pair(k);
        lhs_fano(&w, &r, &s)
    }).collect();
    let spread = values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread <= 1e-7);
    let best = optimize_settings(&w);
    assert!((best.l3 - expect).abs() < 1e-7);
}

#[test]
fn optimal_settings_for_pure_and_mixed_marginal_states() {
    for alpha in [0.1, 0.5, 0.8] {
        let best = optimize_settings(&states::pure_entangled(alpha).unwrap());
        let expect = h(0.5 - (alpha * (1.0f64 - alpha)).sqrt());
        assert!((best.l3 - expect).abs() < 1e-7, "alpha {alpha}: {best:?}");
        // One of the two settings is σ_z (up to sign), except at α = 1/2 where every pair ties.
        if alpha != 0.5 {
            let cos_r = best.obs_r.direction()[2].abs();
            let cos_s = best.obs_s.direction()[2].abs();
            assert!(cos_r.max(cos_s) > 1.0 - 1e-6, "{best:?}");
        }
    }
    let mm = optimize_settings(&states::mixed_marginal(0.5, -0.2, -0.3).unwrap());
    assert!((mm.l3 - (h(0.25) + h(0.35))).abs() < 1e-7);
    let cl = optimize_settings(&states::classical_state::<f64>(0.5).unwrap());
    assert!((cl.l3 - 1.0).abs() < 1e-9);
}

#[test]
fn bounds_hold_on_random_states_sample() {
    for seed in 0..30u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        for k in 0..5 {
            let (r, s) = random_mub_pair(seed * 100 + k);
            let rep = full_report(&rho, &r, &s, Subsystem::B).unwrap();
            let floor = rep.l1.max(rep.l2).max(rep.l4);
            assert!(rep.lhs_fano >= floor - 1e-7, "seed {seed}: {rep:?}");
            assert!(rep.lhs_entropic >= rep.l1 - 1e-7, "seed {seed}: {rep:?}");
        }
    }
}
