//! Dense complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Everything here is sized for one or two qubits. The eigensolver is a
//! cyclic complex Jacobi iteration: slow asymptotically, but exact enough
//! and fully deterministic at these sizes.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{c, re, Real, C};

/// Tolerance used when checking that an input is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which Jacobi iteration stops.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Which factor of a two-qubit tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Square complex matrix of dimension 2 or 4, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T: Real> {
    dim: usize,
    entries: Vec<C<T>>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            entries: vec![C::zero(); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = C::one();
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be 4 or 16.
    pub fn from_rows(entries: Vec<C<T>>) -> Result<Self> {
        let dim = match entries.len() {
            4 => 2,
            16 => 4,
            n => return Err(Error::UnsupportedDimension((n as f64).sqrt() as usize)),
        };
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(entries: &[T]) -> Result<Self> {
        Self::from_rows(entries.iter().map(|&x| re(x)).collect())
    }

    pub fn diagonal(diag: &[T]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = re(d);
        }
        Ok(m)
    }

    /// The projector |v⟩⟨v| (not normalized; `v` is used as given).
    pub fn outer(v: &[C<T>]) -> Result<Self> {
        let mut m = Self::zeros(v.len())?;
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(C::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, k: C<T>) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: T) -> Self {
        self.scale(re(k))
    }

    /// Largest entrywise deviation from Hermiticity, |M − M†|_max.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// (M + M†)/2.
    pub fn symmetrized(&self) -> Self {
        let half = T::lit(0.5);
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * half;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).norm()))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    pub fn mat_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).fold(C::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    /// ⟨v|M|v⟩.
    pub fn expectation(&self, v: &[C<T>]) -> C<T> {
        self.mat_vec(v)
            .iter()
            .zip(v)
            .fold(C::zero(), |acc, (mv, vi)| acc + vi.conj() * *mv)
    }

    /// Tr(M·N), without forming the product.
    pub fn trace_product(&self, other: &Self) -> C<T> {
        let n = self.dim;
        let mut acc = C::zero();
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }

    /// U·M·U†.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }
}

impl<T: Real> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.entries[i * self.dim + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.entries[i * self.dim + j]
    }
}

impl<T: Real> Mul for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: Self) -> SquareMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![C::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        SquareMatrix { dim: n, entries: out }
    }
}

impl<T: Real> Add for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn add(self, rhs: Self) -> SquareMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn sub(self, rhs: Self) -> SquareMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Pauli matrices and related single-qubit constants.
pub mod pauli {
    use super::*;

    pub fn identity<T: Real>() -> SquareMatrix<T> {
        SquareMatrix::identity(2).expect("dim 2")
    }

    pub fn x<T: Real>() -> SquareMatrix<T> {
        SquareMatrix::from_real_rows(&[T::zero(), T::one(), T::one(), T::zero()]).expect("dim 2")
    }

    pub fn y<T: Real>() -> SquareMatrix<T> {
        let (o, i) = (C::zero(), c(T::zero(), T::one()));
        SquareMatrix::from_rows(vec![o, -i, i, o]).expect("dim 2")
    }

    pub fn z<T: Real>() -> SquareMatrix<T> {
        SquareMatrix::diagonal(&[T::one(), -T::one()]).expect("dim 2")
    }
}

/// Kronecker product `a ⊗ b`.
///
/// Only products of total dimension ≤ 4 are supported.
pub fn tensor_product<T: Real>(a: &SquareMatrix<T>, b: &SquareMatrix<T>) -> Result<SquareMatrix<T>> {
    let (d1, d2) = (a.dim, b.dim);
    let d = d1 * d2;
    if d > 4 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut out = SquareMatrix::zeros(d)?;
    for i in 0..d1 {
        for j in 0..d1 {
            for k in 0..d2 {
                for l in 0..d2 {
                    out[(i * d2 + k, j * d2 + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced 2×2 matrix of subsystem `keep`, tracing out the other qubit.
pub fn partial_trace<T: Real>(rho: &SquareMatrix<T>, keep: Subsystem) -> Result<SquareMatrix<T>> {
    if rho.dim != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim });
    }
    let mut out = SquareMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = C::zero();
            for k in 0..2 {
                acc += match keep {
                    Subsystem::A => rho[(2 * i + k, 2 * j + k)],
                    Subsystem::B => rho[(2 * k + i, 2 * k + j)],
                };
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

/// n_x σ_x + n_y σ_y + n_z σ_z for a unit vector `n`.
pub fn bloch_operator<T: Real>(n: [T; 3]) -> Result<SquareMatrix<T>> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if !norm.is_finite() || (norm - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::InvalidDirection(norm.to_f64_lossy()));
    }
    Ok(bloch_operator_unchecked(n))
}

pub(crate) fn bloch_operator_unchecked<T: Real>(n: [T; 3]) -> SquareMatrix<T> {
    SquareMatrix::from_rows(vec![
        re(n[2]),
        c(n[0], -n[1]),
        c(n[0], n[1]),
        re(-n[2]),
    ])
    .expect("dim 2")
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T: Real> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Unit-norm, index-aligned with `eigenvalues`.
    pub eigenvectors: Vec<Vec<C<T>>>,
}

impl<T: Real> EigenSystem<T> {
    /// Σ λ_k v_k v_k†.
    pub fn reconstruct(&self) -> SquareMatrix<T> {
        let n = self.eigenvalues.len();
        let mut m = SquareMatrix::zeros(n).expect("valid dim");
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        m
    }
}

fn off_diagonal_norm<T: Real>(a: &SquareMatrix<T>) -> T {
    let n = a.dim;
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// The input is symmetrized before iterating. Within a degenerate cluster the
/// vectors are re-orthonormalized in index order, and each vector's phase is
/// fixed so that its largest-magnitude component is real and nonnegative.
pub fn hermitian_eigensystem<T: Real>(m: &SquareMatrix<T>) -> Result<EigenSystem<T>> {
    let defect = m.hermiticity_defect();
    if defect.is_nan() || defect > T::tol(HERMITIAN_TOL) {
        return Err(Error::NotHermitian(defect.to_f64_lossy()));
    }
    let n = m.dim;
    let mut a = m.symmetrized();
    let mut v = SquareMatrix::identity(n)?;
    let tol = T::tol(JACOBI_TOL);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    // Stable, so ties keep rotation order.
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(std::cmp::Ordering::Equal));

    let eigenvalues: Vec<T> = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors: Vec<Vec<C<T>>> =
        order.iter().map(|&k| (0..n).map(|i| v[(i, k)]).collect()).collect();

    orthonormalize_clusters(&eigenvalues, &mut eigenvectors);
    for vec in &mut eigenvectors {
        fix_phase(vec);
    }
    Ok(EigenSystem { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation zeroing `a[p][q]`; accumulates into `v`.
fn jacobi_rotate<T: Real>(a: &mut SquareMatrix<T>, v: &mut SquareMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g <= T::min_positive_value() {
        return;
    }
    let phase = apq / g; // e^{iα}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (g + g);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let cs = T::one() / (T::one() + t * t).sqrt();
    let sn = t * cs;

    // U acts on columns p, q: U = D·R with D = diag(1, e^{-iα}) on (p, q).
    let u_pp = re(cs);
    let u_pq = re(sn);
    let u_qp = phase.conj() * (-sn);
    let u_qq = phase.conj() * cs;

    let n = a.dim;
    // A ← A·U
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * u_pp + aiq * u_qp;
        a[(i, q)] = aip * u_pq + aiq * u_qq;
    }
    // A ← U†·A
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = u_pp.conj() * apj + u_qp.conj() * aqj;
        a[(q, j)] = u_pq.conj() * apj + u_qq.conj() * aqj;
    }
    a[(p, q)] = C::zero();
    a[(q, p)] = C::zero();
    a[(p, p)] = re(a[(p, p)].re);
    a[(q, q)] = re(a[(q, q)].re);
    // V ← V·U
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * u_pp + viq * u_qp;
        v[(i, q)] = vip * u_pq + viq * u_qq;
    }
}

fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

fn orthonormalize_clusters<T: Real>(values: &[T], vectors: &mut [Vec<C<T>>]) {
    let cluster_tol = T::tol(1e-9);
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end] - values[end - 1] <= cluster_tol {
            end += 1;
        }
        for k in start..end {
            for prev in start..k {
                let proj = inner(&vectors[prev], &vectors[k]);
                let (head, tail) = vectors.split_at_mut(k);
                for (x, y) in tail[0].iter_mut().zip(&head[prev]) {
                    *x -= *y * proj;
                }
            }
            let norm = inner(&vectors[k], &vectors[k]).re.sqrt();
            if norm > T::zero() {
                for x in &mut vectors[k] {
                    *x /= norm;
                }
            }
        }
        start = end;
    }
}

fn fix_phase<T: Real>(v: &mut [C<T>]) {
    let mut best = 0;
    let mut best_mag = T::zero();
    let slack = T::tol(1e-12);
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mag + slack {
            best = i;
            best_mag = m;
        }
    }
    if best_mag > T::zero() {
        let rot = v[best].conj() / v[best].norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
        v[best] = re(v[best].norm());
    }
}
