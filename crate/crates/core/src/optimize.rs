//! Grid search followed by Nelder–Mead refinement.
//!
//! Grid evaluation runs on the rayon pool; the reduction walks the results
//! in index order so the outcome does not depend on scheduling.

use rayon::prelude::*;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop once max − min of the simplex values falls below this.
    pub value_spread_tol: f64,
    pub max_iterations: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { value_spread_tol: 1e-10, max_iterations: 500 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<T: Real, const N: usize> {
    pub point: [T; N],
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Index and value of the smallest grid value; ties within `tie_tol` go to the lowest index.
pub fn grid_min<T, P, F>(points: &[P], f: F, tie_tol: T) -> (usize, T)
where
    T: Real,
    P: Sync,
    F: Fn(&P) -> T + Sync,
{
    assert!(!points.is_empty(), "empty grid");
    let values: Vec<T> = points.par_iter().map(&f).collect();
    let best = values
        .iter()
        .copied()
        .filter(|v| !v.is_nan())
        .fold(T::infinity(), T::min);
    let idx = values
        .iter()
        .position(|&v| v <= best + tie_tol)
        .unwrap_or(0);
    (idx, values[idx])
}

/// Minimizes `f` from `start` with an axis-aligned initial simplex of edge `step`.
pub fn nelder_mead<T, F, const N: usize>(
    f: F,
    start: [T; N],
    step: [T; N],
    opts: NelderMeadOptions,
) -> Minimum<T, N>
where
    T: Real,
    F: Fn(&[T; N]) -> T,
{
    let (alpha, gamma, rho, sigma) = (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5));
    let tol = T::tol(opts.value_spread_tol);

    let mut simplex: Vec<([T; N], T)> = Vec::with_capacity(N + 1);
    simplex.push((start, f(&start)));
    for k in 0..N {
        let mut x = start;
        x[k] += step[k];
        simplex.push((x, f(&x)));
    }

    let order = |s: &mut Vec<([T; N], T)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    };

    let mut iterations = 0;
    let mut converged = false;
    order(&mut simplex);
    while iterations < opts.max_iterations {
        let spread = simplex[N].1 - simplex[0].1;
        if spread <= tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = [T::zero(); N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += x[k];
            }
        }
        let inv = T::one() / T::from_usize(N).expect("small");
        for c in &mut centroid {
            *c *= inv;
        }
        let worst = simplex[N];
        let along = |t: T| {
            let mut x = [T::zero(); N];
            for k in 0..N {
                x[k] = centroid[k] + t * (worst.0[k] - centroid[k]);
            }
            x
        };

        let xr = along(-alpha);
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(-gamma);
            let fe = f(&xe);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let x = along(-rho);
                (x, f(&x))
            } else {
                let x = along(rho);
                (x, f(&x))
            };
            if fc < worst.1.min(fr) {
                simplex[N] = (xc, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    let mut x = entry.0;
                    for k in 0..N {
                        x[k] = best[k] + sigma * (x[k] - best[k]);
                    }
                    *entry = (x, f(&x));
                }
            }
        }
        order(&mut simplex);
    }
    if !converged && simplex[N].1 - simplex[0].1 <= tol {
        converged = true;
    }
    Minimum { point: simplex[0].0, value: simplex[0].1, iterations, converged }
}
