//! One-sided classical correlation, quantum discord and extractable
//! classical information.

use serde::Serialize;

use crate::entropy::{binary_entropy_clamped, mutual_information, von_neumann};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::measurement::{condition_on, joint_distribution};
use crate::optimize::{grid_min, nelder_mead, NelderMeadOptions};
use crate::scalar::Real;
use crate::states::{mixed_marginal_eigenvalues, polar_direction, DensityMatrix, Observable};

/// The party that performs the projective measurement.
pub type MeasurementSide = Subsystem;

pub const GRID_THETA: usize = 64;
pub const GRID_PHI: usize = 128;
pub const DISCORD_CLAMP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult<T: Real> {
    pub value: T,
    pub argmax: Observable<T>,
    pub iterations: usize,
    pub converged: bool,
}

/// S(unmeasured marginal) − Σ_j p_j S(conditional state j) for a fixed measurement on `side`.
pub fn classical_gain<T: Real>(rho_ab: &DensityMatrix<T>, obs: &Observable<T>, side: MeasurementSide) -> Result<T> {
    let unmeasured = von_neumann(&rho_ab.marginal(side.other()))?;
    Ok(unmeasured - condition_on(rho_ab, obs, side).average_entropy())
}

fn gain_at<T: Real>(rho_ab: &DensityMatrix<T>, unmeasured: T, theta: T, phi: T, side: MeasurementSide) -> T {
    let obs = Observable::from_direction_unchecked(polar_direction(theta, phi));
    unmeasured - condition_on(rho_ab, &obs, side).average_entropy()
}

/// Maximum of [`classical_gain`] over all projective qubit measurements on `side`.
///
/// A 64 × 128 (θ, φ) grid locates the basin, then Nelder–Mead refines the
/// best grid point until the simplex values agree to 1e-10.
pub fn classical_information<T: Real>(rho_ab: &DensityMatrix<T>, side: MeasurementSide) -> Result<OptimizationResult<T>> {
    let unmeasured = von_neumann(&rho_ab.marginal(side.other()))?;
    let d_theta = T::PI() / T::lit((GRID_THETA - 1) as f64);
    let d_phi = T::TAU() / T::lit(GRID_PHI as f64);
    let grid: Vec<(T, T)> = (0..GRID_THETA)
        .flat_map(|i| (0..GRID_PHI).map(move |j| (i, j)))
        .map(|(i, j)| (d_theta * T::lit(i as f64), d_phi * T::lit(j as f64)))
        .collect();

    let (idx, _) = grid_min(
        &grid,
        |&(t, p)| -gain_at(rho_ab, unmeasured, t, p, side),
        T::tol(1e-12),
    );
    let (t0, p0) = grid[idx];
    let refined = nelder_mead(
        |x: &[T; 2]| -gain_at(rho_ab, unmeasured, x[0], x[1], side),
        [t0, p0],
        // Half-cell steps: a full cell can mirror the start about an optimum
        // lying between grid rows, leaving a flat simplex that stops at once.
        [d_theta * T::lit(0.5), d_phi * T::lit(0.5)],
        NelderMeadOptions::default(),
    );
    Ok(OptimizationResult {
        value: (-refined.value).max(T::zero()),
        argmax: Observable::from_any_angles(refined.point[0], refined.point[1]),
        iterations: refined.iterations,
        converged: refined.converged,
    })
}

/// Closed-form classical information of ¼(I + Σ cᵢ σᵢ⊗σᵢ): 1 − H((1 − c_M)/2), c_M = max |cᵢ|.
pub fn luo_classical_information<T: Real>(cx: T, cy: T, cz: T) -> Result<T> {
    const NAMES: [&str; 4] = ["lambda0", "lambda1", "lambda2", "lambda3"];
    let slack = T::tol(1e-12);
    for (name, l) in NAMES.iter().zip(mixed_marginal_eigenvalues(cx, cy, cz)) {
        if !(l >= -slack && l <= T::one() + slack) {
            return Err(Error::Parameter {
                name,
                value: l.to_f64_lossy(),
                reason: "eigenvalue must lie in [0, 1]".into(),
            });
        }
    }
    let c_max = cx.abs().max(cy.abs()).max(cz.abs());
    Ok(T::one() - binary_entropy_clamped((T::one() - c_max) * T::lit(0.5)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discord<T: Real> {
    pub value: T,
    pub mutual_information: T,
    pub classical: OptimizationResult<T>,
}

impl<T: Real> Discord<T> {
    pub fn converged(&self) -> bool {
        self.classical.converged
    }
}

/// I(ρ) − C^M(ρ) with the measurement on `side`.
pub fn quantum_discord<T: Real>(rho_ab: &DensityMatrix<T>, side: MeasurementSide) -> Result<Discord<T>> {
    let mi = mutual_information(rho_ab)?;
    let classical = classical_information(rho_ab, side)?;
    Ok(discord_from_parts(mi, classical))
}

pub(crate) fn discord_from_parts<T: Real>(mi: T, classical: OptimizationResult<T>) -> Discord<T> {
    let mut value = mi - classical.value;
    if value < T::zero() && value >= -T::tol(DISCORD_CLAMP) {
        value = T::zero();
    }
    Discord { value, mutual_information: mi, classical }
}

/// Classical mutual information of the outcomes when both parties measure `obs`.
pub fn extractable_classical_information<T: Real>(rho_ab: &DensityMatrix<T>, obs: &Observable<T>) -> T {
    joint_distribution(rho_ab, obs, obs).mutual_information()
}
