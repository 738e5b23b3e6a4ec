use num_complex::Complex64;

use crate::coupling::{Coupling, REGIME_TOL};
use crate::fiber::transmission_matrix;
use crate::mat2::{Mat2, SIGMA0, SIGMA1, SIGMA2, SIGMA3};
use crate::{Error, Result};

/// Tolerance of the check `exp(−iσ1A) = Λ` made by [`renormalize`],
/// relative to the largest entry.
pub const EXP_IDENTITY_TOL: f64 = 1e-10;

/// Coupling constants `(η̃, τ̃, λ̃) = s(d, l)·(η, τ, λ)` of a regular
/// potential `A·h_ε` whose narrow limit is the δ-interaction with `(η, τ, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormalizedCoupling {
    pub eta_t: f64,
    pub tau_t: f64,
    pub lambda_t: f64,
    pub branch_l: i32,
    /// `A = η̃σ0 + τ̃σ3 + λ̃σ2`.
    pub a_matrix: Mat2,
    /// The scalar `s(d, l)`.
    pub factor: f64,
    pub original: Coupling,
}

impl RenormalizedCoupling {
    fn with_factor(c: &Coupling, factor: f64, branch_l: i32) -> Self {
        let (eta_t, tau_t, lambda_t) = (factor * c.eta, factor * c.tau, factor * c.lambda);
        RenormalizedCoupling {
            eta_t,
            tau_t,
            lambda_t,
            branch_l,
            a_matrix: SIGMA0 * eta_t + SIGMA3 * tau_t + SIGMA2 * lambda_t,
            factor,
            original: *c,
        }
    }

    /// `A = M` without renormalization. Its narrow limit is the δ-interaction
    /// with transmission matrix `exp(−iσ1M)`, which differs from `Λ` unless
    /// `d = 0`.
    pub fn unrenormalized(c: &Coupling) -> Self {
        RenormalizedCoupling::with_factor(c, 1.0, 0)
    }

    /// `exp(−iσ1A)`, the transmission matrix of the narrow limit.
    pub fn limit_transmission(&self) -> Mat2 {
        (SIGMA1 * self.a_matrix * Complex64::new(0.0, -1.0)).exp_closed()
    }

    /// `max |exp(−iσ1A) − Λ| / max |Λ|`.
    pub fn exp_identity_residual(&self) -> Result<f64> {
        let lambda = transmission_matrix(&self.original)?.lambda_matrix;
        Ok(self.limit_transmission().scaled_diff(&lambda))
    }
}

/// The scalar `s(d, l)`:
/// `(2/√d)(arctan(√d/2) + lπ)` for `d > 0`, `1` for `d = 0` and
/// `(2/√−d) artanh(√−d/2)` for `−4 < d < 0`. `l` only matters for `d > 0`.
pub fn renormalization_factor(d: f64, l: i32) -> f64 {
    if d.abs() < REGIME_TOL {
        1.0
    } else if d > 0.0 {
        let r = d.sqrt();
        2.0 / r * ((0.5 * r).atan() + l as f64 * core::f64::consts::PI)
    } else {
        let r = (-d).sqrt();
        2.0 / r * (0.5 * r).atanh()
    }
}

/// Renormalized constants for `ω = 0`, `d > −4`, branch `l`.
///
/// Couplings with `d < −4` are not covered; the `−4/d` partner of such a
/// coupling has `d ∈ (−4, 0)` and unitarily equivalent fibers, so it can be
/// approximated instead.
pub fn renormalize(c: &Coupling, l: i32) -> Result<RenormalizedCoupling> {
    if c.omega != 0.0 {
        return Err(Error::InvalidRegime("renormalization requires omega = 0; apply the gauge reduction first"));
    }
    if !c.is_finite() {
        return Err(Error::InvalidInput("non-finite coupling"));
    }
    let d = c.d();
    if d <= -4.0 + REGIME_TOL {
        return Err(Error::UnsupportedRegime(
            "renormalization needs d > -4; approximate the -4/d partner coupling instead",
        ));
    }
    let r = RenormalizedCoupling::with_factor(c, renormalization_factor(d, l), l);
    let residual = r.exp_identity_residual()?;
    if !(residual <= EXP_IDENTITY_TOL) {
        return Err(Error::CheckFailed { what: "exp(-i sigma1 A) = Lambda", residual });
    }
    Ok(r)
}
