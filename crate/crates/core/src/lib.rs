//! # eurb
//!
//! Lower bounds on entropic uncertainty for two-qubit states shared with a
//! quantum memory.
//!
//! Alice measures one of two incompatible qubit observables R, S; Bob holds
//! the other half of ρ_AB and tries to guess her outcome. This crate computes
//! the uncertainty sums he faces and five lower bounds on them:
//!
//! - **L0**, classical strategy: Bob only knows a marginal.
//! - **L1**, memory-assisted: c′(ρ_A) + S(A|B).
//! - **L2**, L1 tightened by max{0, D − C^M} (discord minus classical information).
//! - **L3**, fine-grained: binary entropies of same-observable disagreement probabilities.
//! - **L4**, extractable classical information: c′ + S(ρ_A) − C^{R,R} − C^{S,S}.
//!
//! Every routine is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`). The aliases at the crate root fix it to `f64`, which is
//! what the tolerances are calibrated for.
//!
//! ```
//! use eurb::{full_report, states, Observable, Subsystem};
//!
//! let rho = states::classical_state::<f64>(0.5).unwrap();
//! let r = full_report(&rho, &Observable::z(), &Observable::x(), Subsystem::B).unwrap();
//! assert!((r.l0 - 2.0).abs() < 1e-9);
//! assert!((r.l4 - 1.0).abs() < 1e-9);
//! ```

#![forbid(unsafe_code)]

pub mod bounds;
pub mod correlations;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod measurement;
pub mod optimize;
pub mod scalar;
pub mod states;

pub use bounds::{full_report, BoundReport, GameSpec};
pub use correlations::MeasurementSide;
pub use error::{Error, Result};
pub use linalg::Subsystem;
pub use scalar::Real;
pub use states::{DensityMatrix, Observable};

pub type SquareMatrix64 = linalg::SquareMatrix<f64>;
pub type EigenSystem64 = linalg::EigenSystem<f64>;
pub type DensityMatrix64 = states::DensityMatrix<f64>;
pub type Observable64 = states::Observable<f64>;
pub type BoundReport64 = bounds::BoundReport<f64>;
pub type GameSpec64 = bounds::GameSpec<f64>;
pub type OptimizationResult64 = correlations::OptimizationResult<f64>;
pub type ConditionalEnsemble64 = measurement::ConditionalEnsemble<f64>;
pub type OutcomeDistribution64 = measurement::OutcomeDistribution<f64>;

pub type SquareMatrix32 = linalg::SquareMatrix<f32>;
pub type DensityMatrix32 = states::DensityMatrix<f32>;
pub type Observable32 = states::Observable<f32>;
pub type BoundReport32 = bounds::BoundReport<f32>;
