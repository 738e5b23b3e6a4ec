use alloc::vec::Vec;

use num_complex::Complex64;

use super::{bands, transmission_matrix, FiberContext};
use crate::coupling::reduce_omega;
use crate::mat2::{spinor_norm_sqr, spinor_scale, spinor_sub, Mat2, Spinor};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative distance to `z = −m` below which the eigenfunction is built from
/// the `z = −m` formulas.
const MINUS_M_TOL: f64 = 1e-10;

/// A normalized eigenfunction of a fiber operator:
/// `ψ(x) = N·right·e^{−μx}` for `x > 0` and `ψ(x) = N·left·e^{μx}` for `x ≤ 0`,
/// with `N = normalization`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub energy: f64,
    pub mu: f64,
    pub left_spinor: Spinor,
    pub right_spinor: Spinor,
    pub normalization: f64,
}

impl BoundState {
    fn new(energy: f64, mu: f64, left: Spinor, right: Spinor) -> Self {
        let raw = (spinor_norm_sqr(left) + spinor_norm_sqr(right)) / (2.0 * mu);
        BoundState {
            energy,
            mu,
            left_spinor: left,
            right_spinor: right,
            normalization: 1.0 / raw.sqrt(),
        }
    }

    /// Normalized eigenfunction at `x`.
    pub fn eval(&self, x: f64) -> Spinor {
        let (s, e) = if x > 0.0 {
            (self.right_spinor, (-self.mu * x).exp())
        } else {
            (self.left_spinor, (self.mu * x).exp())
        };
        spinor_scale(s, Complex64::new(self.normalization * e, 0.0))
    }

    /// `∫|ψ|²` from the exact exponential integrals; 1 up to rounding.
    pub fn norm_sqr(&self) -> f64 {
        let n2 = self.normalization * self.normalization;
        n2 * (spinor_norm_sqr(self.left_spinor) + spinor_norm_sqr(self.right_spinor)) / (2.0 * self.mu)
    }

    /// `‖ψ(0+) − Λψ(0−)‖ / max(1, ‖ψ(0+)‖)`.
    pub fn transmission_residual(&self, lambda: &Mat2) -> f64 {
        let r = spinor_sub(self.right_spinor, lambda.apply(self.left_spinor));
        let scale = spinor_norm_sqr(self.right_spinor).sqrt().max(1e-300);
        spinor_norm_sqr(r).sqrt() / scale
    }

    /// `|(H[k] − z)ψ(x)|` for `x ≠ 0`, using `ψ' = ∓μψ` on the two half-lines.
    pub fn ode_residual(&self, ctx: &FiberContext, x: f64) -> f64 {
        let psi = self.eval(x);
        let rate = if x > 0.0 { -self.mu } else { self.mu };
        let dpsi = spinor_scale(psi, Complex64::new(rate, 0.0));
        let (m, k, z) = (ctx.mass(), ctx.k, self.energy);
        let r1 = psi[0] * (m - z) - I * (dpsi[1] + psi[1] * k);
        let r2 = -I * (dpsi[0] - psi[0] * k) - psi[1] * (m + z);
        (r1.norm_sqr() + r2.norm_sqr()).sqrt()
    }
}

/// Eigenvalues of `H[k]` in the gap with their eigenfunctions, sorted by
/// energy. At most two.
///
/// For `ω ≠ 0` the eigenvalues are those of the gauge-reduced coupling and
/// the eigenfunctions pick up the gauge phase on the left half-line.
pub fn fiber_eigenvalues(ctx: &FiberContext) -> Result<Vec<(f64, BoundState)>> {
    ctx.check_gap()?;
    let c = &ctx.coupling;
    if c.classify().is_confining {
        return Err(Error::ConfiningRegime);
    }
    if c.omega != 0.0 {
        let gauge = reduce_omega(c);
        let reduced = FiberContext::new(gauge.reduced, ctx.k);
        let mut states = fiber_eigenvalues(&reduced)?;
        for (_, s) in states.iter_mut() {
            s.left_spinor = spinor_scale(s.left_spinor, gauge.phase);
        }
        return Ok(states);
    }

    let edge = ctx.gap_edge();
    let mut energies: Vec<f64> = bands(c)?
        .iter()
        .filter_map(|b| b.value(ctx.k))
        .filter(|z| z.abs() < edge)
        .collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    energies.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * edge);

    let lambda = transmission_matrix(c)?.lambda_matrix;
    Ok(energies
        .into_iter()
        .map(|z| (z, bound_state(ctx, z, &lambda)))
        .collect())
}

fn bound_state(ctx: &FiberContext, z: f64, lambda: &Mat2) -> BoundState {
    let (m, k) = (ctx.mass(), ctx.k);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let near_minus_m = (z + m).abs() < MINUS_M_TOL * m.abs().max(1.0) && k != 0.0;
    let (mu, left) = if near_minus_m {
        // ψ = (0, 1)e^{−kx} for k < 0 and (1, −im/k)e^{kx} for k > 0 on x < 0
        let left = if k < 0.0 { [c(0.0, 0.0), c(1.0, 0.0)] } else { [c(1.0, 0.0), c(0.0, -m / k)] };
        (k.abs(), left)
    } else {
        // (1, i(k − μ)/(z + m)) up to a factor; (k − μ)/(z + m) = (z − m)/(k + μ)
        // and the representation is picked so that no component cancels.
        let mu = ctx.mu(z);
        let left = if k <= 0.0 {
            [c(1.0, 0.0), c(0.0, (k - mu) / (z + m))]
        } else {
            [c(1.0, 0.0), c(0.0, (z - m) / (k + mu))]
        };
        (mu, left)
    };
    BoundState::new(z, mu, left, lambda.apply(left))
}
