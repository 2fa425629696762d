//! Density matrices, observables and the two-qubit state families.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    bloch_operator_unchecked, hermitian_eigensystem, partial_trace, pauli, tensor_product,
    SquareMatrix, Subsystem,
};
use crate::scalar::{c, re, Real, C};

pub const TRACE_TOL: f64 = 1e-10;
pub const PSD_TOL: f64 = 1e-9;

/// One failed density-matrix invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    UnsupportedDimension(usize),
    NotHermitian { deviation: f64 },
    Trace { trace: f64 },
    NegativeEigenvalue { eigenvalue: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsupportedDimension(d) => write!(f, "unsupported dimension {d}"),
            Violation::NotHermitian { deviation } => write!(f, "not Hermitian (deviation {deviation:e})"),
            Violation::Trace { trace } => write!(f, "trace {trace} != 1"),
            Violation::NegativeEigenvalue { eigenvalue } => write!(f, "negative eigenvalue {eigenvalue:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Validity {
    pub violations: Vec<Violation>,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks Hermiticity, unit trace and positive semidefiniteness.
pub fn validate<T: Real>(m: &SquareMatrix<T>) -> Validity {
    let mut violations = Vec::new();
    if !matches!(m.dim(), 2 | 4) {
        violations.push(Violation::UnsupportedDimension(m.dim()));
        return Validity { violations };
    }
    let defect = m.hermiticity_defect();
    let hermitian = defect <= T::tol(crate::linalg::HERMITIAN_TOL);
    if !hermitian {
        violations.push(Violation::NotHermitian { deviation: defect.to_f64_lossy() });
    }
    let tr = m.trace();
    if (tr.re - T::one()).abs() > T::tol(TRACE_TOL) || tr.im.abs() > T::tol(TRACE_TOL) {
        violations.push(Violation::Trace { trace: tr.re.to_f64_lossy() });
    }
    if hermitian {
        if let Ok(es) = hermitian_eigensystem(m) {
            let min = es.eigenvalues[0];
            if min < -T::tol(PSD_TOL) {
                violations.push(Violation::NegativeEigenvalue { eigenvalue: min.to_f64_lossy() });
            }
        }
    }
    Validity { violations }
}

/// A validated state of one or two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: SquareMatrix<T>,
    label: Option<String>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: SquareMatrix<T>) -> Result<Self> {
        let v = validate(&matrix);
        if !v.is_valid() {
            let msg: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidState(msg.join("; ")));
        }
        Ok(Self { matrix, label: None })
    }

    /// Wraps a matrix without checking it; pair with [`DensityMatrix::validate`].
    pub fn new_unchecked(matrix: SquareMatrix<T>) -> Self {
        Self { matrix, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn validate(&self) -> Validity {
        validate(&self.matrix)
    }

    pub fn matrix(&self) -> &SquareMatrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Reduced state of `keep`. Panics on a single-qubit state.
    pub fn marginal(&self, keep: Subsystem) -> DensityMatrix<T> {
        let m = partial_trace(&self.matrix, keep).expect("marginal of a two-qubit state");
        DensityMatrix { matrix: m, label: None }
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> T {
        self.matrix.trace_product(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        hermitian_eigensystem(&self.matrix)
            .expect("density matrices are Hermitian")
            .eigenvalues
    }
}

/// Projective qubit observable n·σ, with n given in polar angles.
///
/// Canonical ranges: θ ∈ [0, π], φ ∈ [0, 2π). Antipodal directions describe
/// the same measurement with outcome labels swapped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observable<T: Real> {
    theta: T,
    phi: T,
}

impl<T: Real> Observable<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::InvalidAngle { name: "theta", value: theta.to_f64_lossy() });
        }
        if !(phi >= T::zero() && phi < T::TAU()) {
            return Err(Error::InvalidAngle { name: "phi", value: phi.to_f64_lossy() });
        }
        Ok(Self { theta, phi })
    }

    /// Maps arbitrary real angles onto the canonical range, preserving the direction.
    pub fn from_any_angles(theta: T, phi: T) -> Self {
        Self::from_direction_unchecked(polar_direction(theta, phi))
    }

    pub fn from_direction(n: [T; 3]) -> Result<Self> {
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !norm.is_finite() || (norm - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::InvalidDirection(norm.to_f64_lossy()));
        }
        Ok(Self::from_direction_unchecked(n))
    }

    pub(crate) fn from_direction_unchecked(n: [T; 3]) -> Self {
        let theta = n[2].max(-T::one()).min(T::one()).acos();
        let rho = (n[0] * n[0] + n[1] * n[1]).sqrt();
        let mut phi = if rho <= T::tol(1e-15) { T::zero() } else { n[1].atan2(n[0]) };
        if phi < T::zero() {
            phi += T::TAU();
        }
        if phi >= T::TAU() {
            phi = T::zero();
        }
        Self { theta, phi }
    }

    pub fn x() -> Self {
        Self { theta: T::FRAC_PI_2(), phi: T::zero() }
    }

    pub fn y() -> Self {
        Self { theta: T::FRAC_PI_2(), phi: T::FRAC_PI_2() }
    }

    pub fn z() -> Self {
        Self { theta: T::zero(), phi: T::zero() }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// Unit Bloch vector (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn direction(&self) -> [T; 3] {
        polar_direction(self.theta, self.phi)
    }

    pub fn antipode(&self) -> Self {
        let n = self.direction();
        Self::from_direction_unchecked([-n[0], -n[1], -n[2]])
    }

    pub fn operator(&self) -> SquareMatrix<T> {
        bloch_operator_unchecked(self.direction())
    }

    /// Eigenvectors for outcomes 0 (+1) and 1 (−1).
    pub fn eigenstates(&self) -> [[C<T>; 2]; 2] {
        let half = self.theta * T::lit(0.5);
        let (s, co) = half.sin_cos();
        let e = c(self.phi.cos(), self.phi.sin());
        [[re(co), e * s], [re(-s), e * co]]
    }
}

pub(crate) fn polar_direction<T: Real>(theta: T, phi: T) -> [T; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

fn check_unit_interval<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x >= T::zero() && x <= T::one() {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value: x.to_f64_lossy(),
            reason: "must lie in [0, 1]".into(),
        })
    }
}

fn ket<T: Real>(amps: [T; 4]) -> Vec<C<T>> {
    amps.iter().map(|&a| re(a)).collect()
}

fn projector4<T: Real>(amps: [T; 4]) -> SquareMatrix<T> {
    SquareMatrix::outer(&ket(amps)).expect("dim 4")
}

/// |ψ⁻⟩⟨ψ⁻| with |ψ⁻⟩ = (|01⟩ − |10⟩)/√2.
pub fn singlet<T: Real>() -> DensityMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    DensityMatrix::new_unchecked(projector4([T::zero(), s, -s, T::zero()])).with_label("singlet")
}

/// |Φ⁺⟩⟨Φ⁺| with |Φ⁺⟩ = (|00⟩ + |11⟩)/√2.
pub fn phi_plus<T: Real>() -> DensityMatrix<T> {
    let s = T::FRAC_1_SQRT_2();
    DensityMatrix::new_unchecked(projector4([s, T::zero(), T::zero(), s])).with_label("phi+")
}

pub fn maximally_mixed<T: Real>(dim: usize) -> Result<DensityMatrix<T>> {
    let d = T::from_usize(dim).expect("small integer");
    Ok(DensityMatrix::new_unchecked(SquareMatrix::identity(dim)?.scale_real(T::one() / d)))
}

/// √α|01⟩ − √(1−α)|10⟩.
pub fn pure_entangled<T: Real>(alpha: T) -> Result<DensityMatrix<T>> {
    check_unit_interval("alpha", alpha)?;
    let m = projector4([T::zero(), alpha.sqrt(), -(T::one() - alpha).sqrt(), T::zero()]);
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("pe(alpha={alpha})")))
}

/// (1−p)/4 I⊗I + p |ψ⁻⟩⟨ψ⁻|.
pub fn werner<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    check_unit_interval("p", p)?;
    let noise = SquareMatrix::identity(4)?.scale_real((T::one() - p) / T::lit(4.0));
    let m = &noise + &singlet::<T>().matrix.scale_real(p);
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("werner(p={p})")))
}

/// p |Φ⁺⟩⟨Φ⁺| + (1−p) |ψ⁻⟩⟨ψ⁻|.
pub fn bell_diagonal<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    check_unit_interval("p", p)?;
    let m = &phi_plus::<T>().matrix.scale_real(p) + &singlet::<T>().matrix.scale_real(T::one() - p);
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("bd(p={p})")))
}

/// Eigenvalues λ₀..λ₃ of ¼(I + Σ cᵢ σᵢ⊗σᵢ).
pub fn mixed_marginal_eigenvalues<T: Real>(cx: T, cy: T, cz: T) -> [T; 4] {
    let q = T::lit(0.25);
    let one = T::one();
    [
        (one - cx - cy - cz) * q,
        (one - cx + cy + cz) * q,
        (one + cx - cy + cz) * q,
        (one + cx + cy - cz) * q,
    ]
}

/// ¼(I + c_x σx⊗σx + c_y σy⊗σy + c_z σz⊗σz); both marginals are I/2.
pub fn mixed_marginal<T: Real>(cx: T, cy: T, cz: T) -> Result<DensityMatrix<T>> {
    const NAMES: [&str; 4] = ["lambda0", "lambda1", "lambda2", "lambda3"];
    for (name, c) in [("cx", cx), ("cy", cy), ("cz", cz)] {
        if !c.is_finite() {
            return Err(Error::Parameter { name, value: c.to_f64_lossy(), reason: "not finite".into() });
        }
    }
    let slack = T::tol(1e-12);
    for (name, l) in NAMES.iter().zip(mixed_marginal_eigenvalues(cx, cy, cz)) {
        if l < -slack || l > T::one() + slack {
            return Err(Error::Parameter {
                name,
                value: l.to_f64_lossy(),
                reason: "eigenvalue must lie in [0, 1]".into(),
            });
        }
    }
    let mut m = SquareMatrix::identity(4)?;
    for (ci, s) in [(cx, pauli::x::<T>()), (cy, pauli::y()), (cz, pauli::z())] {
        m = &m + &tensor_product(&s, &s)?.scale_real(ci);
    }
    let m = m.scale_real(T::lit(0.25));
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("mm(cx={cx},cy={cy},cz={cz})")))
}

/// p|00⟩⟨00| + (1−p)|11⟩⟨11|.
pub fn classical_state<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    check_unit_interval("p", p)?;
    let m = SquareMatrix::diagonal(&[p, T::zero(), T::zero(), T::one() - p])?;
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("classical(p={p})")))
}

/// ρ ⊗ ρ for a single-qubit ρ.
pub fn product_copy<T: Real>(rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rho.dim() });
    }
    Ok(DensityMatrix::new_unchecked(tensor_product(&rho.matrix, &rho.matrix)?))
}

/// Single-qubit state from its Bloch vector r (|r| ≤ 1).
pub fn qubit_from_bloch<T: Real>(r: [T; 3]) -> Result<DensityMatrix<T>> {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if norm.is_nan() || norm > T::one() + T::tol(1e-12) {
        return Err(Error::Parameter {
            name: "bloch",
            value: norm.to_f64_lossy(),
            reason: "Bloch vector norm must be at most 1".into(),
        });
    }
    let half = T::lit(0.5);
    let m = SquareMatrix::from_rows(vec![
        re(half * (T::one() + r[2])),
        c(half * r[0], -half * r[1]),
        c(half * r[0], half * r[1]),
        re(half * (T::one() - r[2])),
    ])?;
    Ok(DensityMatrix::new_unchecked(m))
}

/// Seeded random two-qubit state of the given rank.
///
/// Draws a 4×rank matrix G of independent complex Gaussians (ChaCha8 stream
/// seeded with `seed`) and returns G G† / Tr(G G†), i.e. the marginal of a
/// random purification with a rank-dimensional ancilla.
pub fn random_state<T: Real>(seed: u64, rank: usize) -> Result<DensityMatrix<T>> {
    if !(1..=4).contains(&rank) {
        return Err(Error::Parameter {
            name: "rank",
            value: rank as f64,
            reason: "must lie in 1..=4".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = vec![[C::<T>::default(); 4]; rank];
    for col in g.iter_mut() {
        for amp in col.iter_mut() {
            let a: f64 = StandardNormal.sample(&mut rng);
            let b: f64 = StandardNormal.sample(&mut rng);
            *amp = c(T::lit(a), T::lit(b));
        }
    }
    let mut m = SquareMatrix::zeros(4)?;
    for col in &g {
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] += col[i] * col[j].conj();
            }
        }
    }
    let tr = m.trace().re;
    let m = m.scale_real(T::one() / tr).symmetrized();
    Ok(DensityMatrix::new_unchecked(m).with_label(format!("random(seed={seed},rank={rank})")))
}

/// Seeded random single-qubit state (uniform direction, radius^(1/3) in the ball).
pub fn random_qubit<T: Real>(seed: u64) -> DensityMatrix<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = random_unit_vector_f64(&mut rng);
    let u: f64 = rand::Rng::random(&mut rng);
    let r = u.cbrt();
    qubit_from_bloch([T::lit(r * n[0]), T::lit(r * n[1]), T::lit(r * n[2])])
        .expect("radius at most one")
}

pub(crate) fn random_unit_vector_f64<R: rand::Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Seeded random observable, uniform on the Bloch sphere.
pub fn random_observable<T: Real>(seed: u64) -> Observable<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = random_unit_vector_f64(&mut rng);
    Observable::from_direction_unchecked([T::lit(n[0]), T::lit(n[1]), T::lit(n[2])])
}

/// Seeded random pair of mutually unbiased (Bloch-orthogonal) observables.
pub fn random_mub_pair<T: Real>(seed: u64) -> (Observable<T>, Observable<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = random_unit_vector_f64(&mut rng);
    let psi: f64 = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
    let first = Observable::from_direction_unchecked(n.map(T::lit));
    let second = orthogonal_partner(&first, T::lit(psi));
    (first, second)
}

/// The direction at angle `psi` in the plane orthogonal to `obs`, measured
/// from the polar unit vector ê_θ towards ê_φ.
pub fn orthogonal_partner<T: Real>(obs: &Observable<T>, psi: T) -> Observable<T> {
    partner_from_angles(obs.theta, obs.phi, psi)
}

pub(crate) fn partner_from_angles<T: Real>(theta: T, phi: T, psi: T) -> Observable<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (s, co) = psi.sin_cos();
    Observable::from_direction_unchecked([
        co * ct * cp - s * sp,
        co * ct * sp + s * cp,
        -co * st,
    ])
}
