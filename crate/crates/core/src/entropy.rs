//! Entropy functionals. All logarithms are base 2; results are in bits.

use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::scalar::Real;
use crate::states::{DensityMatrix, PSD_TOL};

pub const DISTRIBUTION_SUM_TOL: f64 = 1e-9;
pub const WEIGHT_SLACK: f64 = 1e-12;

/// Finite probability distribution; weights are clamped into [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution<T: Real> {
    weights: Vec<T>,
}

impl<T: Real> ProbabilityDistribution<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Distribution("empty".into()));
        }
        let slack = T::tol(WEIGHT_SLACK);
        for &w in &weights {
            if !(w >= -slack && w <= T::one() + slack) {
                return Err(Error::Distribution(format!("weight {w} outside [0, 1]")));
            }
        }
        let sum = weights.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > T::tol(DISTRIBUTION_SUM_TOL) {
            return Err(Error::Distribution(format!("weights sum to {sum}")));
        }
        let weights = weights.into_iter().map(|w| w.max(T::zero()).min(T::one())).collect();
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }
}

/// −Σ p log₂ p, with 0 log 0 = 0. Assumes the weights are already clamped.
pub(crate) fn shannon_raw<T: Real>(weights: impl IntoIterator<Item = T>) -> T {
    weights.into_iter().fold(T::zero(), |acc, p| {
        if p > T::zero() {
            acc - p * p.log2()
        } else {
            acc
        }
    })
}

pub fn shannon<T: Real>(dist: &ProbabilityDistribution<T>) -> T {
    shannon_raw(dist.weights.iter().copied())
}

/// Validating convenience wrapper over [`shannon`].
pub fn shannon_of(weights: &[f64]) -> Result<f64> {
    Ok(shannon(&ProbabilityDistribution::new(weights.to_vec())?))
}

/// −x log₂x − (1−x) log₂(1−x).
pub fn binary_entropy<T: Real>(x: T) -> Result<T> {
    let slack = T::tol(WEIGHT_SLACK);
    if !(x >= -slack && x <= T::one() + slack) {
        return Err(Error::Distribution(format!("binary entropy argument {x} outside [0, 1]")));
    }
    Ok(binary_entropy_clamped(x))
}

pub(crate) fn binary_entropy_clamped<T: Real>(x: T) -> T {
    let x = x.max(T::zero()).min(T::one());
    shannon_raw([x, T::one() - x])
}

/// Shannon entropy of a spectrum, treating tiny negative eigenvalues as zero.
pub(crate) fn spectrum_entropy<T: Real>(eigenvalues: &[T]) -> T {
    shannon_raw(eigenvalues.iter().map(|&l| l.max(T::zero())))
}

pub fn von_neumann<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let ev = rho.eigenvalues();
    if ev[0] < -T::tol(PSD_TOL) {
        return Err(Error::InvalidState(format!("negative eigenvalue {}", ev[0])));
    }
    Ok(spectrum_entropy(&ev))
}

fn require_bipartite<T: Real>(rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    Ok(())
}

/// S(A|B) = S(ρ_AB) − S(ρ_B).
pub fn conditional_vn<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<T> {
    require_bipartite(rho_ab)?;
    Ok(von_neumann(rho_ab)? - von_neumann(&rho_ab.marginal(Subsystem::B))?)
}

/// I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB).
pub fn mutual_information<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<T> {
    require_bipartite(rho_ab)?;
    Ok(von_neumann(&rho_ab.marginal(Subsystem::A))?
        + von_neumann(&rho_ab.marginal(Subsystem::B))?
        - von_neumann(rho_ab)?)
}
