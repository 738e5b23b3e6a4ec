use alloc::vec::Vec;

use super::model::{epsilon_bound_states, RegularizedModel};
use super::renormalize::{renormalize, RenormalizedCoupling};
use crate::coupling::Coupling;
use crate::fiber::{fiber_eigenvalues, FiberContext};
use crate::{Error, Result};

/// Default bound on the error at the smallest `ε`.
pub const DEFAULT_SWEEP_THRESHOLD: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    /// Eigenvalue of the regularized model closest to `target`; `None` if
    /// the regularized model has no eigenvalue in the gap.
    pub energy: Option<f64>,
    /// Eigenvalue of the δ-model.
    pub target: f64,
    /// `|energy − target|`, infinite when `energy` is `None`.
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub coupling: Coupling,
    pub k: f64,
    pub branch_l: i32,
    pub renormalized: bool,
    /// Ordered by target, then by decreasing `ε`.
    pub rows: Vec<SweepRow>,
    /// For every target, the error strictly decreases as `ε` decreases.
    pub monotone: bool,
    /// Largest error at the smallest `ε`.
    pub final_error: f64,
}

impl SweepReport {
    /// Fails unless the errors decrease monotonically and end below `threshold`.
    pub fn ensure_converged(&self, threshold: f64) -> Result<()> {
        if !self.monotone {
            return Err(Error::CheckFailed { what: "sweep errors decrease monotonically", residual: self.final_error });
        }
        if !(self.final_error < threshold) {
            return Err(Error::CheckFailed { what: "final sweep error below threshold", residual: self.final_error });
        }
        Ok(())
    }
}

/// Eigenvalues of the renormalized regular model for each `ε` compared with
/// the δ-model eigenvalues at `k`.
pub fn convergence_sweep(c: &Coupling, k: f64, eps_list: &[f64], branch_l: i32) -> Result<SweepReport> {
    let renorm = renormalize(c, branch_l)?;
    sweep_with(c, k, eps_list, &renorm, true)
}

/// As [`convergence_sweep`] but with `A = M`, the potential without
/// renormalization.
pub fn naive_sweep(c: &Coupling, k: f64, eps_list: &[f64]) -> Result<SweepReport> {
    if c.omega != 0.0 {
        return Err(Error::InvalidRegime("the regular model requires omega = 0"));
    }
    sweep_with(c, k, eps_list, &RenormalizedCoupling::unrenormalized(c), false)
}

fn sweep_with(c: &Coupling, k: f64, eps_list: &[f64], renorm: &RenormalizedCoupling, renormalized: bool) -> Result<SweepReport> {
    if eps_list.is_empty() || eps_list.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::InvalidInput("epsilon values must be positive"));
    }
    let targets: Vec<f64> = fiber_eigenvalues(&FiberContext::new(*c, k))?
        .into_iter()
        .map(|(z, _)| z)
        .collect();
    if targets.is_empty() {
        return Err(Error::NoBoundState);
    }
    let mut eps: Vec<f64> = eps_list.to_vec();
    eps.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut roots = Vec::with_capacity(eps.len());
    for &e in &eps {
        roots.push(epsilon_bound_states(&RegularizedModel::new(*renorm, k, e)?)?);
    }

    let mut rows = Vec::with_capacity(eps.len() * targets.len());
    let mut monotone = true;
    let mut final_error: f64 = 0.0;
    for &target in &targets {
        let mut prev = f64::INFINITY;
        for (&e, rs) in eps.iter().zip(&roots) {
            let energy = rs
                .iter()
                .copied()
                .min_by(|a, b| (a - target).abs().partial_cmp(&(b - target).abs()).unwrap());
            let abs_error = energy.map_or(f64::INFINITY, |z| (z - target).abs());
            if !(abs_error < prev) {
                monotone = false;
            }
            prev = abs_error;
            rows.push(SweepRow { epsilon: e, energy, target, abs_error });
        }
        final_error = final_error.max(prev);
    }
    Ok(SweepReport {
        coupling: *c,
        k,
        branch_l: renorm.branch_l,
        renormalized,
        rows,
        monotone,
        final_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electrostatic_one_converges() {
        let c = Coupling::reduced(1.0, 0.0, 0.0, 1.0);
        let r = convergence_sweep(&c, 0.0, &[1e-1, 1e-2, 1e-3], 0).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert!((r.rows[0].target + 0.6).abs() < 1e-15);
        r.ensure_converged(DEFAULT_SWEEP_THRESHOLD).unwrap();
    }

    #[test]
    fn free_has_no_target() {
        let c = Coupling::reduced(0.0, 0.0, 0.0, 1.0);
        assert_eq!(convergence_sweep(&c, 0.0, &[1e-2], 0), Err(Error::NoBoundState));
    }
}
