//! Projective qubit measurements on one or both halves of a two-qubit state.
//!
//! Outcome 0 is the +1 eigenvalue of n·σ and outcome 1 is the −1 eigenvalue,
//! everywhere in the crate.

use serde::Serialize;

use crate::entropy::spectrum_entropy;
use crate::error::{Error, Result};
use crate::linalg::{pauli, tensor_product, SquareMatrix, Subsystem};
use crate::scalar::{Real, C};
use crate::states::{DensityMatrix, Observable};

/// Branches with probability at or below this are treated as absent.
pub const ZERO_BRANCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorPair<T: Real> {
    pub pi0: SquareMatrix<T>,
    pub pi1: SquareMatrix<T>,
}

impl<T: Real> ProjectorPair<T> {
    pub fn get(&self, outcome: usize) -> &SquareMatrix<T> {
        match outcome {
            0 => &self.pi0,
            _ => &self.pi1,
        }
    }
}

/// Π_a = (I + (−1)^a n·σ)/2.
pub fn projectors<T: Real>(obs: &Observable<T>) -> ProjectorPair<T> {
    let id = pauli::identity::<T>();
    let op = obs.operator();
    let half = T::lit(0.5);
    ProjectorPair {
        pi0: (&id + &op).scale_real(half),
        pi1: (&id - &op).scale_real(half),
    }
}

/// Joint outcome probabilities `p[a][b]` for local measurements on A and B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeDistribution<T: Real> {
    pub p: [[T; 2]; 2],
}

impl<T: Real> OutcomeDistribution<T> {
    pub fn marginal_a(&self) -> [T; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    pub fn marginal_b(&self) -> [T; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }

    /// Probability that the two outcomes differ.
    pub fn disagreement(&self) -> T {
        self.p[0][1] + self.p[1][0]
    }

    pub fn total(&self) -> T {
        self.p.iter().flatten().fold(T::zero(), |a, &b| a + b)
    }

    /// Classical mutual information H(a) + H(b) − H(a, b) of the table.
    pub fn mutual_information(&self) -> T {
        let joint = spectrum_entropy(&[self.p[0][0], self.p[0][1], self.p[1][0], self.p[1][1]]);
        spectrum_entropy(&self.marginal_a()) + spectrum_entropy(&self.marginal_b()) - joint
    }
}

fn kron_vec<T: Real>(a: &[C<T>; 2], b: &[C<T>; 2]) -> [C<T>; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// p[a][b] = Tr[(Π_a ⊗ Π_b) ρ].
pub fn joint_distribution<T: Real>(
    rho_ab: &DensityMatrix<T>,
    obs_a: &Observable<T>,
    obs_b: &Observable<T>,
) -> OutcomeDistribution<T> {
    let ea = obs_a.eigenstates();
    let eb = obs_b.eigenstates();
    let m = rho_ab.matrix();
    let mut p = [[T::zero(); 2]; 2];
    for (a, va) in ea.iter().enumerate() {
        for (b, vb) in eb.iter().enumerate() {
            p[a][b] = m.expectation(&kron_vec(va, vb)).re.max(T::zero());
        }
    }
    OutcomeDistribution { p }
}

/// Probability that Alice and Bob get different outcomes measuring the same observable.
pub fn p_different<T: Real>(rho_ab: &DensityMatrix<T>, obs: &Observable<T>) -> T {
    joint_distribution(rho_ab, obs, obs).disagreement()
}

/// One outcome of a one-sided measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<T: Real> {
    pub prob: T,
    /// Post-measurement state of the unmeasured qubit; `None` when the
    /// branch has (numerically) zero probability.
    pub state: Option<DensityMatrix<T>>,
}

/// Outcome-indexed ensemble left on the unmeasured qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEnsemble<T: Real> {
    pub branches: Vec<Branch<T>>,
}

impl<T: Real> ConditionalEnsemble<T> {
    pub fn probabilities(&self) -> Vec<T> {
        self.branches.iter().map(|b| b.prob).collect()
    }

    /// Σ_j p_j S(ρ_j), skipping zero-probability branches.
    pub fn average_entropy(&self) -> T {
        self.branches
            .iter()
            .filter_map(|b| b.state.as_ref().map(|s| b.prob * spectrum_entropy(&s.eigenvalues())))
            .fold(T::zero(), |a, b| a + b)
    }

    /// Σ_j p_j ρ_j.
    pub fn average_state(&self) -> SquareMatrix<T> {
        let mut acc = SquareMatrix::zeros(2).expect("dim 2");
        for b in &self.branches {
            if let Some(s) = &b.state {
                acc = &acc + &s.matrix().scale_real(b.prob);
            }
        }
        acc
    }
}

/// Measures `obs` on `side` and returns the ensemble of the other qubit.
pub fn condition_on<T: Real>(
    rho_ab: &DensityMatrix<T>,
    obs: &Observable<T>,
    side: Subsystem,
) -> ConditionalEnsemble<T> {
    let m = rho_ab.matrix();
    let cut = T::tol(ZERO_BRANCH_TOL);
    let branches = obs
        .eigenstates()
        .iter()
        .map(|v| {
            // Contract ⟨v| on the measured index from both sides.
            let mut out = SquareMatrix::<T>::zeros(2).expect("dim 2");
            for i in 0..2 {
                for k in 0..2 {
                    let mut acc = C::default();
                    for l in 0..2 {
                        for n in 0..2 {
                            let (row, col) = match side {
                                Subsystem::B => (2 * i + l, 2 * k + n),
                                Subsystem::A => (2 * l + i, 2 * n + k),
                            };
                            acc += v[l].conj() * m[(row, col)] * v[n];
                        }
                    }
                    out[(i, k)] = acc;
                }
            }
            let prob = out.trace().re.max(T::zero());
            if prob <= cut {
                Branch { prob, state: None }
            } else {
                let state = DensityMatrix::new_unchecked(out.scale_real(T::one() / prob).symmetrized());
                Branch { prob, state: Some(state) }
            }
        })
        .collect();
    ConditionalEnsemble { branches }
}

/// Σ_j (Π_j ⊗ I) ρ (Π_j ⊗ I) (or with the projectors on B): measure and forget.
pub fn dephase<T: Real>(
    rho_ab: &DensityMatrix<T>,
    obs: &Observable<T>,
    side: Subsystem,
) -> Result<DensityMatrix<T>> {
    if rho_ab.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho_ab.dim() });
    }
    let pp = projectors(obs);
    let id = pauli::identity::<T>();
    let mut out = SquareMatrix::zeros(4)?;
    for pi in [&pp.pi0, &pp.pi1] {
        let full = match side {
            Subsystem::A => tensor_product(pi, &id)?,
            Subsystem::B => tensor_product(&id, pi)?,
        };
        out = &out + &(&(&full * rho_ab.matrix()) * &full);
    }
    Ok(DensityMatrix::new_unchecked(out.symmetrized()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{conditional_vn, shannon_raw, von_neumann};
    use crate::states::*;

    #[test]
    fn projector_pair_invariants() {
        let obs = Observable::<f64>::new(0.7, 4.0).unwrap();
        let pp = projectors(&obs);
        let id = pauli::identity::<f64>();
        assert!((&pp.pi0 + &pp.pi1).approx_eq(&id, 1e-12));
        assert!((&pp.pi0 * &pp.pi0).approx_eq(&pp.pi0, 1e-12));
        assert!((&pp.pi1 * &pp.pi1).approx_eq(&pp.pi1, 1e-12));
        assert!((&pp.pi0 * &pp.pi1).approx_eq(&SquareMatrix::zeros(2).unwrap(), 1e-12));
        let half = 0.35f64;
        assert!((pp.pi0[(0, 0)].re - half.cos().powi(2)).abs() < 1e-12);
        assert!((pp.pi0[(1, 1)].re - half.sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn z_and_x_projectors() {
        let z = projectors(&Observable::<f64>::z());
        assert_eq!(z.pi0, SquareMatrix::diagonal(&[1.0, 0.0]).unwrap());
        assert_eq!(z.pi1, SquareMatrix::diagonal(&[0.0, 1.0]).unwrap());
        let x = projectors(&Observable::<f64>::x());
        let plus = SquareMatrix::from_real_rows(&[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(x.pi0.approx_eq(&plus, 1e-15));
    }

    #[test]
    fn singlet_zz_is_anticorrelated() {
        let d = joint_distribution(&singlet::<f64>(), &Observable::z(), &Observable::z());
        assert!((d.p[0][1] - 0.5).abs() < 1e-15 && (d.p[1][0] - 0.5).abs() < 1e-15);
        assert!(d.p[0][0].abs() < 1e-15 && d.p[1][1].abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_is_uniform() {
        let mm = maximally_mixed::<f64>(4).unwrap();
        let d = joint_distribution(&mm, &Observable::new(0.3, 1.0).unwrap(), &Observable::new(2.0, 5.0).unwrap());
        for row in d.p {
            for x in row {
                assert!((x - 0.25).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn werner_disagreement_brute_force() {
        // Oracle: Tr[(Π_a ⊗ Π_b) ρ] with explicit 4×4 projectors.
        let p = 0.37;
        let w = werner::<f64>(p).unwrap();
        let obs = Observable::new(1.2, 0.4).unwrap();
        let pp = projectors(&obs);
        let mut brute = 0.0;
        for (a, b) in [(0, 1), (1, 0)] {
            let proj = tensor_product(pp.get(a), pp.get(b)).unwrap();
            brute += proj.trace_product(w.matrix()).re;
        }
        assert!((brute - (1.0 + p) / 2.0).abs() < 1e-12);
        assert!((p_different(&w, &obs) - brute).abs() < 1e-12);
    }

    #[test]
    fn p_different_family_values() {
        let cl = classical_state::<f64>(0.3).unwrap();
        assert!(p_different(&cl, &Observable::z()).abs() < 1e-15);
        assert!((p_different(&cl, &Observable::x()) - 0.5).abs() < 1e-15);
        let alpha: f64 = 0.2;
        let pe = pure_entangled(alpha).unwrap();
        let expect = 0.5 + (alpha * (1.0 - alpha)).sqrt();
        assert!((p_different(&pe, &Observable::x()) - expect).abs() < 1e-12);
    }

    #[test]
    fn singlet_conditioned_on_b() {
        let e = condition_on(&singlet::<f64>(), &Observable::z(), Subsystem::B);
        assert!((e.branches[0].prob - 0.5).abs() < 1e-15);
        let s0 = e.branches[0].state.as_ref().unwrap();
        let s1 = e.branches[1].state.as_ref().unwrap();
        assert!(s0.matrix().approx_eq(&SquareMatrix::diagonal(&[0.0, 1.0]).unwrap(), 1e-15));
        assert!(s1.matrix().approx_eq(&SquareMatrix::diagonal(&[1.0, 0.0]).unwrap(), 1e-15));
    }

    #[test]
    fn product_copy_branches_equal_factor() {
        let rho = random_qubit::<f64>(11);
        let pc = product_copy(&rho).unwrap();
        let e = condition_on(&pc, &Observable::new(0.9, 2.0).unwrap(), Subsystem::B);
        for b in &e.branches {
            assert!(b.state.as_ref().unwrap().matrix().approx_eq(rho.matrix(), 1e-12));
        }
    }

    #[test]
    fn werner_branches_from_partial_trace() {
        let p = 0.6;
        let e = condition_on(&werner::<f64>(p).unwrap(), &Observable::z(), Subsystem::B);
        let d0 = SquareMatrix::diagonal(&[(1.0 - p) / 2.0, (1.0 + p) / 2.0]).unwrap();
        let d1 = SquareMatrix::diagonal(&[(1.0 + p) / 2.0, (1.0 - p) / 2.0]).unwrap();
        assert!(e.branches[0].state.as_ref().unwrap().matrix().approx_eq(&d0, 1e-15));
        assert!(e.branches[1].state.as_ref().unwrap().matrix().approx_eq(&d1, 1e-15));
    }

    #[test]
    fn condition_matches_explicit_projector_formula() {
        let rho = random_state::<f64>(5, 3).unwrap();
        let obs = Observable::new(2.1, 0.3).unwrap();
        let pp = projectors(&obs);
        let id = pauli::identity::<f64>();
        for side in [Subsystem::A, Subsystem::B] {
            let e = condition_on(&rho, &obs, side);
            for (j, br) in e.branches.iter().enumerate() {
                let full = match side {
                    Subsystem::A => tensor_product(pp.get(j), &id).unwrap(),
                    Subsystem::B => tensor_product(&id, pp.get(j)).unwrap(),
                };
                let post = &(&full * rho.matrix()) * &full;
                let reduced = crate::linalg::partial_trace(&post, side.other()).unwrap();
                let prob = reduced.trace().re;
                assert!((br.prob - prob).abs() < 1e-12);
                let expect = reduced.scale_real(1.0 / prob);
                assert!(br.state.as_ref().unwrap().matrix().approx_eq(&expect, 1e-12));
            }
            assert!(e.average_state().approx_eq(rho.marginal(side.other()).matrix(), 1e-10));
        }
    }

    #[test]
    fn zero_probability_branch_is_flagged() {
        let e = condition_on(&classical_state::<f64>(1.0).unwrap(), &Observable::z(), Subsystem::B);
        assert!(e.branches[1].state.is_none());
        assert_eq!(e.branches[1].prob, 0.0);
        assert_eq!(e.average_entropy(), 0.0);
    }

    #[test]
    fn dephase_examples() {
        let cl = classical_state::<f64>(0.3).unwrap();
        assert!(dephase(&cl, &Observable::z(), Subsystem::A).unwrap().matrix().approx_eq(cl.matrix(), 1e-15));
        let d = dephase(&singlet::<f64>(), &Observable::z(), Subsystem::A).unwrap();
        assert!(d.matrix().approx_eq(&SquareMatrix::diagonal(&[0.0, 0.5, 0.5, 0.0]).unwrap(), 1e-15));
    }

    #[test]
    fn werner_dephased_matches_ensemble() {
        let p = 0.723;
        let w = werner::<f64>(p).unwrap();
        let obs = Observable::x();
        let d = dephase(&w, &obs, Subsystem::A).unwrap();
        let e = condition_on(&w, &obs, Subsystem::A);
        let channel = conditional_vn(&d).unwrap();
        let ensemble = shannon_raw(e.probabilities()) + e.average_entropy()
            - von_neumann(&w.marginal(Subsystem::B)).unwrap();
        assert!((channel - ensemble).abs() < 1e-12);
        // Each branch is diag((1±p)/2) in the x basis: S = H((1+p)/2).
        let h = crate::entropy::binary_entropy((1.0 + p) / 2.0).unwrap();
        assert!((channel - h).abs() < 1e-12);
    }

    #[test]
    fn extractable_table_information() {
        let d = OutcomeDistribution::<f64> { p: [[0.5, 0.0], [0.0, 0.5]] };
        assert!((d.mutual_information() - 1.0).abs() < 1e-15);
        let u = OutcomeDistribution::<f64> { p: [[0.25; 2]; 2] };
        assert!(u.mutual_information().abs() < 1e-15);
    }
}
