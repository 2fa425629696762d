//! Invariants of the linear algebra, state, entropy and measurement layers,
//! checked on seeded random inputs.

use eurb::entropy::{conditional_vn, mutual_information, shannon, von_neumann, ProbabilityDistribution};
use eurb::linalg::{bloch_operator, hermitian_eigensystem, partial_trace, pauli, tensor_product, SquareMatrix};
use eurb::measurement::{condition_on, dephase, joint_distribution, p_different};
use eurb::states::{self, random_observable, random_qubit, random_state};
use eurb::{Observable, Subsystem};
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian_from(values: &[f64]) -> SquareMatrix<f64> {
    let mut m = SquareMatrix::zeros(4).unwrap();
    let mut k = 0;
    for i in 0..4 {
        m[(i, i)] = Complex64::new(values[k], 0.0);
        k += 1;
        for j in (i + 1)..4 {
            let z = Complex64::new(values[k], values[k + 1]);
            k += 2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-3).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

/// exp(−i t n·σ/2) = cos(t/2) I − i sin(t/2) n·σ.
fn rotation(n: [f64; 3], t: f64) -> SquareMatrix<f64> {
    let id = pauli::identity::<f64>();
    let op = bloch_operator(n).unwrap();
    &id.scale_real((t / 2.0).cos()) + &op.scale(Complex64::new(0.0, -(t / 2.0).sin()))
}

proptest! {
    #[test]
    fn eigensystem_reconstructs(values in prop::collection::vec(-1.0f64..1.0, 16)) {
        let m = hermitian_from(&values);
        let es = hermitian_eigensystem(&m).unwrap();
        prop_assert!(es.reconstruct().approx_eq(&m, 1e-9));
        for w in es.eigenvalues.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        for (a, va) in es.eigenvectors.iter().enumerate() {
            for (b, vb) in es.eigenvectors.iter().enumerate() {
                let ip: Complex64 = va.iter().zip(vb).map(|(x, y)| x.conj() * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                prop_assert!((ip - expect).norm() < 1e-10);
            }
            let mv = m.mat_vec(va);
            for (x, y) in mv.iter().zip(va) {
                prop_assert!((x - y * es.eigenvalues[a]).norm() < 1e-9);
            }
        }
        prop_assert_eq!(hermitian_eigensystem(&m).unwrap(), es);
    }

    #[test]
    fn partial_trace_of_products(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_qubit::<f64>(s1);
        let b = random_qubit::<f64>(s2);
        let ab = tensor_product(a.matrix(), b.matrix()).unwrap();
        prop_assert!(partial_trace(&ab, Subsystem::A).unwrap().approx_eq(a.matrix(), 1e-12));
        prop_assert!(partial_trace(&ab, Subsystem::B).unwrap().approx_eq(b.matrix(), 1e-12));
    }

    #[test]
    fn bloch_operator_squares_to_identity(v in prop::array::uniform3(-1.0f64..1.0)) {
        if let Some(n) = unit(v) {
            let op = bloch_operator(n).unwrap();
            prop_assert!((&op * &op).approx_eq(&pauli::identity(), 1e-12));
        }
    }

    #[test]
    fn shannon_permutation_and_padding(raw in prop::collection::vec(0.01f64..1.0, 2..6), shift in 0usize..6) {
        let total: f64 = raw.iter().sum();
        let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let h = shannon(&ProbabilityDistribution::new(w.clone()).unwrap());
        let mut rotated = w.clone();
        rotated.rotate_left(shift % w.len());
        let mut padded = w.clone();
        padded.push(0.0);
        prop_assert!((shannon(&ProbabilityDistribution::new(rotated).unwrap()) - h).abs() < 1e-12);
        prop_assert!((shannon(&ProbabilityDistribution::new(padded).unwrap()) - h).abs() < 1e-15);
        prop_assert!(h >= 0.0 && h <= (w.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn von_neumann_is_unitarily_invariant(
        seed in any::<u64>(),
        rank in 1usize..=4,
        n1 in prop::array::uniform3(-1.0f64..1.0),
        n2 in prop::array::uniform3(-1.0f64..1.0),
        t1 in 0.0f64..6.3,
        t2 in 0.0f64..6.3,
    ) {
        let (Some(n1), Some(n2)) = (unit(n1), unit(n2)) else { return Ok(()) };
        let rho = random_state::<f64>(seed, rank).unwrap();
        let u = tensor_product(&rotation(n1, t1), &rotation(n2, t2)).unwrap();
        let rotated = eurb::DensityMatrix::new(rho.matrix().conjugate_by(&u)).unwrap();
        prop_assert!((von_neumann(&rotated).unwrap() - von_neumann(&rho).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn product_copies_carry_no_mutual_information(seed in any::<u64>()) {
        let pc = states::product_copy(&random_qubit::<f64>(seed)).unwrap();
        prop_assert!(mutual_information(&pc).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn joint_distribution_marginals(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = random_state::<f64>(seed, rank).unwrap();
        let oa = random_observable::<f64>(seed ^ 0x5a5a);
        let ob = random_observable::<f64>(seed.wrapping_add(17));
        let d = joint_distribution(&rho, &oa, &ob);
        prop_assert!((d.total() - 1.0).abs() < 1e-9);
        let rho_a = rho.marginal(Subsystem::A);
        let pp = eurb::measurement::projectors(&oa);
        for a in 0..2 {
            let expect = pp.get(a).trace_product(rho_a.matrix()).re;
            prop_assert!((d.marginal_a()[a] - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn p_different_ignores_outcome_labels(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = random_state::<f64>(seed, rank).unwrap();
        let o = random_observable::<f64>(seed.rotate_left(7));
        prop_assert!((p_different(&rho, &o) - p_different(&rho, &o.antipode())).abs() < 1e-12);
    }

    #[test]
    fn dephasing_is_idempotent(seed in any::<u64>(), rank in 1usize..=4, side_a in any::<bool>()) {
        let side = if side_a { Subsystem::A } else { Subsystem::B };
        let rho = random_state::<f64>(seed, rank).unwrap();
        let o = random_observable::<f64>(!seed);
        let once = dephase(&rho, &o, side).unwrap();
        let twice = dephase(&once, &o, side).unwrap();
        prop_assert!(twice.matrix().approx_eq(once.matrix(), 1e-10));
        prop_assert!(once.validate().is_valid());
    }
}

#[test]
fn family_constructors_are_valid() {
    for k in 0..=100 {
        let t = k as f64 / 100.0;
        let family = [
            states::werner(t).unwrap(),
            states::pure_entangled(t).unwrap(),
            states::bell_diagonal(t).unwrap(),
            states::classical_state(t).unwrap(),
            states::mixed_marginal(-t, -t, -t).unwrap(),
        ];
        for rho in &family {
            assert!(rho.validate().is_valid(), "{:?}", rho.label());
        }
    }
    assert!(states::mixed_marginal(0.5, -0.2, -0.3).unwrap().validate().is_valid());
}

#[test]
fn maximally_mixed_marginal_families() {
    let half = pauli::identity::<f64>().scale_real(0.5);
    for k in 0..=100 {
        let p = k as f64 / 100.0;
        let w = states::werner(p).unwrap();
        let mm = states::mixed_marginal(-p, -p, -p).unwrap();
        assert!(mm.matrix().approx_eq(w.matrix(), 1e-12));
        for side in [Subsystem::A, Subsystem::B] {
            assert!(w.marginal(side).matrix().approx_eq(&half, 1e-12));
            assert!(mm.marginal(side).matrix().approx_eq(&half, 1e-12));
        }
    }
}

#[test]
fn pure_entangled_purity_grid() {
    for k in 0..=100 {
        let pe = states::pure_entangled(k as f64 / 100.0).unwrap();
        assert!((pe.purity() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn random_states_respect_entropy_bounds() {
    for seed in 0..1000u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        assert!(rho.validate().is_valid());
        assert!(mutual_information(&rho).unwrap() >= -1e-9, "seed {seed}");
        assert!(conditional_vn(&rho).unwrap() >= -1.0 - 1e-9, "seed {seed}");
    }
}

#[test]
fn channel_and_ensemble_pictures_agree() {
    for seed in 0..200u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        let o = random_observable::<f64>(seed + 10_000);
        let ensemble = condition_on(&rho, &o, Subsystem::A);
        let h: f64 = ensemble
            .probabilities()
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.log2())
            .sum();
        let expect = h + ensemble.average_entropy() - von_neumann(&rho.marginal(Subsystem::B)).unwrap();
        let channel = conditional_vn(&dephase(&rho, &o, Subsystem::A).unwrap()).unwrap();
        assert!((channel - expect).abs() < 1e-9, "seed {seed}: {channel} vs {expect}");
    }
}

#[test]
fn bob_side_measurement_identity() {
    // S(A|R_B) computed as an ensemble average and as the conditional entropy
    // of the classical-quantum state obtained by dephasing B.
    use eurb::correlations::classical_gain;
    for seed in 0..200u64 {
        let rho = random_state::<f64>(seed, (seed % 4 + 1) as usize).unwrap();
        let o = random_observable::<f64>(seed + 20_000);
        let average = condition_on(&rho, &o, Subsystem::B).average_entropy();
        let gain = classical_gain(&rho, &o, Subsystem::B).unwrap();
        let s_a = von_neumann(&rho.marginal(Subsystem::A)).unwrap();
        assert!((average - (s_a - gain)).abs() < 1e-9);
        let cq = conditional_vn(&dephase(&rho, &o, Subsystem::B).unwrap()).unwrap();
        assert!((cq - average).abs() < 1e-9, "seed {seed}: {cq} vs {average}");
    }
}

#[test]
fn antipodal_observable_swaps_outcomes() {
    let rho = random_state::<f64>(3, 4).unwrap();
    let o = Observable::new(1.0, 2.0).unwrap();
    let d = joint_distribution(&rho, &o, &o);
    let f = joint_distribution(&rho, &o.antipode(), &o.antipode());
    for a in 0..2 {
        for b in 0..2 {
            assert!((d.p[a][b] - f.p[1 - a][1 - b]).abs() < 1e-12);
        }
    }
}

#[test]
fn single_precision_pipeline() {
    let w = states::werner::<f32>(0.723).unwrap();
    let r = eurb::full_report(&w, &Observable::z(), &Observable::x(), Subsystem::B).unwrap();
    let h = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
    let expect = 2.0 * h((1.0 - 0.723) / 2.0);
    assert!((r.l3 as f64 - expect).abs() < 1e-4);
    assert!((r.l4 as f64 - expect).abs() < 1e-4);
    assert!((r.l0 as f64 - 2.0).abs() < 1e-4);
}
