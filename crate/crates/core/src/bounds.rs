//! Uncertainty sums, their lower bounds L0–L4, fine-grained games and the
//! search for optimal measurement settings.
//!
//! | bound | expression |
//! |-------|------------|
//! | L0 | c′(ρ_X) + S(ρ_X), X the measuring side (classical strategy) |
//! | L1 | c′(ρ_A) + S(A\|B) |
//! | L2 | L1 + max{0, D − C^M} |
//! | L3 | H(p_d^R) + H(p_d^S) |
//! | L4 | c′(ρ_A) + S(ρ_A) − C^{R,R} − C^{S,S} |

use serde::Serialize;

use crate::correlations::{classical_information, discord_from_parts, extractable_classical_information, Discord, MeasurementSide};
use crate::entropy::{binary_entropy_clamped, conditional_vn, mutual_information, von_neumann};
use crate::error::{Error, Result};
use crate::linalg::Subsystem;
use crate::measurement::{dephase, joint_distribution, p_different};
use crate::optimize::{grid_min, nelder_mead, NelderMeadOptions};
use crate::scalar::Real;
use crate::states::{partner_from_angles, DensityMatrix, Observable};

/// Differences D − C^M at or below this count as zero in L2.
pub const L2_CORRECTION_CLAMP: f64 = 1e-9;
pub const SETTINGS_GRID: usize = 32;

fn overlaps<T: Real>(r: &Observable<T>, s: &Observable<T>) -> [[T; 2]; 2] {
    let er = r.eigenstates();
    let es = s.eigenstates();
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let ip = er[i][0].conj() * es[j][0] + er[i][1].conj() * es[j][1];
            out[i][j] = ip.norm_sqr();
        }
    }
    out
}

/// c = max_{i,j} |⟨r_i|s_j⟩|².
pub fn complementarity<T: Real>(obs_r: &Observable<T>, obs_s: &Observable<T>) -> T {
    overlaps(obs_r, obs_s)
        .iter()
        .flatten()
        .copied()
        .fold(T::zero(), T::max)
}

fn ordered_adaptive<T: Real>(rho_a: &DensityMatrix<T>, first: &Observable<T>, second: &Observable<T>) -> T {
    let c = overlaps(first, second);
    let m = rho_a.matrix();
    first
        .eigenstates()
        .iter()
        .zip(c.iter())
        .map(|(v, row)| {
            let p = m.expectation(v).re.max(T::zero());
            let cmax = row[0].max(row[1]);
            -p * cmax.log2()
        })
        .fold(T::zero(), |a, b| a + b)
}

/// c′(ρ) = max over both orderings of Σ_i p_i log₂(1 / max_j c_ij).
pub fn adaptive_complementarity<T: Real>(rho_a: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> Result<T> {
    if rho_a.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: rho_a.dim() });
    }
    Ok(ordered_adaptive(rho_a, obs_r, obs_s).max(ordered_adaptive(rho_a, obs_s, obs_r)))
}

/// S(R_A|B) + S(S_A|B).
pub fn lhs_entropic<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> Result<T> {
    Ok(conditional_vn(&dephase(rho_ab, obs_r, Subsystem::A)?)?
        + conditional_vn(&dephase(rho_ab, obs_s, Subsystem::A)?)?)
}

/// H(p_d^R) + H(p_d^S).
pub fn lhs_fano<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> T {
    binary_entropy_clamped(p_different(rho_ab, obs_r)) + binary_entropy_clamped(p_different(rho_ab, obs_s))
}

/// Classical-strategy bound, computed on the marginal of `side`.
pub fn bound_l0<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>, side: MeasurementSide) -> Result<T> {
    let marginal = rho_ab.marginal(side);
    Ok(adaptive_complementarity(&marginal, obs_r, obs_s)? + von_neumann(&marginal)?)
}

pub fn bound_l1<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> Result<T> {
    Ok(adaptive_complementarity(&rho_ab.marginal(Subsystem::A), obs_r, obs_s)? + conditional_vn(rho_ab)?)
}

/// A bound value that depends on an iterative optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate<T: Real> {
    pub value: T,
    pub converged: bool,
}

/// L1 + max{0, D − C^M}, discord and classical information taken on `side`.
pub fn bound_l2<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>, side: MeasurementSide) -> Result<Estimate<T>> {
    let l1 = bound_l1(rho_ab, obs_r, obs_s)?;
    let discord = discord_from_parts(mutual_information(rho_ab)?, classical_information(rho_ab, side)?);
    Ok(l2_from_parts(l1, &discord))
}

/// L2 from an already computed L1 and discord.
pub fn l2_from_parts<T: Real>(l1: T, discord: &Discord<T>) -> Estimate<T> {
    let diff = discord.value - discord.classical.value;
    let correction = if diff > T::tol(L2_CORRECTION_CLAMP) { diff } else { T::zero() };
    Estimate { value: l1 + correction, converged: discord.converged() }
}

/// H(p_d^R) + H(p_d^S), the disagreement probabilities being the
/// equal-settings a⊕b=1 game values.
pub fn bound_l3<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> T {
    lhs_fano(rho_ab, obs_r, obs_s)
}

pub fn bound_l4<T: Real>(rho_ab: &DensityMatrix<T>, obs_r: &Observable<T>, obs_s: &Observable<T>) -> Result<T> {
    let rho_a = rho_ab.marginal(Subsystem::A);
    Ok(adaptive_complementarity(&rho_a, obs_r, obs_s)? + von_neumann(&rho_a)?
        - extractable_classical_information(rho_ab, obs_r)
        - extractable_classical_information(rho_ab, obs_s))
}

/// Nonlocal game with local binary-outcome settings.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec<T: Real> {
    settings_a: Vec<Observable<T>>,
    settings_b: Vec<Observable<T>>,
    /// Row-major over (t_A, t_B).
    setting_probs: Vec<T>,
    /// `win[pair][a][b]` ∈ {0, 1}, pairs row-major like `setting_probs`.
    win: Vec<[[u8; 2]; 2]>,
}

impl<T: Real> GameSpec<T> {
    pub fn new(
        settings_a: Vec<Observable<T>>,
        settings_b: Vec<Observable<T>>,
        setting_probs: Vec<T>,
        win: Vec<[[u8; 2]; 2]>,
    ) -> Result<Self> {
        if settings_a.is_empty() || settings_b.is_empty() {
            return Err(Error::GameSpec("setting lists must be non-empty".into()));
        }
        let pairs = settings_a.len() * settings_b.len();
        if setting_probs.len() != pairs {
            return Err(Error::GameSpec(format!(
                "{} setting probabilities for {pairs} setting pairs",
                setting_probs.len()
            )));
        }
        crate::entropy::ProbabilityDistribution::new(setting_probs.clone())
            .map_err(|e| Error::GameSpec(e.to_string()))?;
        if win.len() != pairs {
            return Err(Error::GameSpec(format!("{} win tables for {pairs} setting pairs", win.len())));
        }
        if win.iter().flatten().flatten().any(|&v| v > 1) {
            return Err(Error::GameSpec("win predicate entries must be 0 or 1".into()));
        }
        Ok(Self { settings_a, settings_b, setting_probs, win })
    }

    /// Both parties measure `obs`; they win iff their outcomes differ.
    pub fn equal_settings_disagreement(obs: Observable<T>) -> Self {
        Self {
            settings_a: vec![obs],
            settings_b: vec![obs],
            setting_probs: vec![T::one()],
            win: vec![[[0, 1], [1, 0]]],
        }
    }

    /// Binary-setting XOR game: win iff a ⊕ b = t_A · t_B, settings uniform.
    pub fn xor_game(settings_a: [Observable<T>; 2], settings_b: [Observable<T>; 2]) -> Self {
        let mut win = Vec::with_capacity(4);
        for ta in 0..2u8 {
            for tb in 0..2u8 {
                let mut table = [[0u8; 2]; 2];
                for a in 0..2u8 {
                    for b in 0..2u8 {
                        table[a as usize][b as usize] = u8::from(a ^ b == ta * tb);
                    }
                }
                win.push(table);
            }
        }
        Self {
            settings_a: settings_a.to_vec(),
            settings_b: settings_b.to_vec(),
            setting_probs: vec![T::lit(0.25); 4],
            win,
        }
    }
}

/// Σ p(t_A, t_B) Σ_{a,b} V(a, b | t_A, t_B) Tr[(Π_a ⊗ Π_b) ρ].
pub fn game_probability<T: Real>(rho_ab: &DensityMatrix<T>, game: &GameSpec<T>) -> T {
    let nb = game.settings_b.len();
    let mut total = T::zero();
    for (ia, oa) in game.settings_a.iter().enumerate() {
        for (ib, ob) in game.settings_b.iter().enumerate() {
            let k = ia * nb + ib;
            let dist = joint_distribution(rho_ab, oa, ob);
            for a in 0..2 {
                for b in 0..2 {
                    if game.win[k][a][b] == 1 {
                        total += game.setting_probs[k] * dist.p[a][b];
                    }
                }
            }
        }
    }
    total.max(T::zero()).min(T::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettingsOptimum<T: Real> {
    pub obs_r: Observable<T>,
    pub obs_s: Observable<T>,
    pub l3: T,
    pub iterations: usize,
    pub converged: bool,
}

fn mub_pair<T: Real>(x: &[T; 3]) -> (Observable<T>, Observable<T>) {
    // Partner built from the raw angles so the map stays continuous for the simplex.
    (Observable::from_any_angles(x[0], x[1]), partner_from_angles(x[0], x[1], x[2]))
}

/// Mutually unbiased pair (R, S) minimizing H(p_d^R) + H(p_d^S).
///
/// R runs over a (θ, φ) grid, S over the angle ψ in the plane orthogonal to R,
/// 32 points per axis, followed by Nelder–Mead refinement of the best point.
pub fn optimize_settings<T: Real>(rho_ab: &DensityMatrix<T>) -> SettingsOptimum<T> {
    let n = SETTINGS_GRID;
    let d_theta = T::PI() / T::lit((n - 1) as f64);
    let d_phi = T::TAU() / T::lit(n as f64);
    let d_psi = T::PI() / T::lit(n as f64);
    let grid: Vec<[T; 3]> = (0..n * n * n)
        .map(|k| {
            let (i, j, l) = (k / (n * n), (k / n) % n, k % n);
            [d_theta * T::lit(i as f64), d_phi * T::lit(j as f64), d_psi * T::lit(l as f64)]
        })
        .collect();
    let objective = |x: &[T; 3]| {
        let (r, s) = mub_pair(x);
        lhs_fano(rho_ab, &r, &s)
    };
    let (idx, grid_value) = grid_min(&grid, objective, T::tol(1e-12));
    let half = T::lit(0.5);
    let step = [d_theta * half, d_phi * half, d_psi * half];
    let refined = nelder_mead(objective, grid[idx], step, NelderMeadOptions::default());
    let (point, value) = if refined.value < grid_value { (refined.point, refined.value) } else { (grid[idx], grid_value) };
    let (obs_r, obs_s) = mub_pair(&point);
    SettingsOptimum { obs_r, obs_s, l3: value, iterations: refined.iterations, converged: refined.converged }
}

/// All bounds and both uncertainty sums for one (state, settings, side) triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport<T: Real> {
    pub l0: T,
    pub l1: T,
    pub l2: T,
    pub l3: T,
    pub l4: T,
    pub lhs_entropic: T,
    pub lhs_fano: T,
    pub obs_r: Observable<T>,
    pub obs_s: Observable<T>,
    pub side: MeasurementSide,
    /// False when the classical-information optimizer hit its iteration cap.
    pub converged: bool,
}

pub fn full_report<T: Real>(
    rho_ab: &DensityMatrix<T>,
    obs_r: &Observable<T>,
    obs_s: &Observable<T>,
    side: MeasurementSide,
) -> Result<BoundReport<T>> {
    if rho_ab.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho_ab.dim() });
    }
    let l1 = bound_l1(rho_ab, obs_r, obs_s)?;
    let discord = discord_from_parts(mutual_information(rho_ab)?, classical_information(rho_ab, side)?);
    let l2 = l2_from_parts(l1, &discord);
    let fano = lhs_fano(rho_ab, obs_r, obs_s);
    Ok(BoundReport {
        l0: bound_l0(rho_ab, obs_r, obs_s, side)?,
        l1,
        l2: l2.value,
        l3: fano,
        l4: bound_l4(rho_ab, obs_r, obs_s)?,
        lhs_entropic: lhs_entropic(rho_ab, obs_r, obs_s)?,
        lhs_fano: fano,
        obs_r: *obs_r,
        obs_s: *obs_s,
        side,
        converged: l2.converged,
    })
}
