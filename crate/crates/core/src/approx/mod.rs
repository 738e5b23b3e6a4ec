//! Approximation of the δ-interaction by scaled regular potentials
//! `A·h_ε(x)`, `h_ε(x) = h(x/ε)/ε`.
//!
//! The naive choice `A = M` converges to the wrong point interaction unless
//! `d = 0`; the coupling constants have to be rescaled first so that
//! `exp(−iσ1A) = Λ`. With the square profile the transfer matrix across the
//! potential is a single matrix exponential, so the regularized bound states
//! and resolvent are computed without an ODE solver.

mod model;
mod renormalize;
mod resolvent;
mod sweep;

pub use model::{epsilon_bound_states, free_generator, limit_eigenvalues, Profile, RegularizedModel};
pub use renormalize::{renormalization_factor, renormalize, RenormalizedCoupling, EXP_IDENTITY_TOL};
pub use resolvent::{
    resolvent_difference_estimate, resolvent_norm_bound_check, resolvent_norm_bound_check_with,
    EpsilonResolvent, GaussianProbe, NormCheckOptions, NormCheckReport,
};
pub use sweep::{convergence_sweep, naive_sweep, SweepReport, SweepRow, DEFAULT_SWEEP_THRESHOLD};
