//! Eigenvalues from the matching condition, without the closed-form bands.
//!
//! A bound state at energy `z` exists iff the decaying solution on the left,
//! carried across the interface by the connection matrix `C(z)`, is parallel
//! to the decaying solution on the right: `det[R(z), C(z) L(z)] = 0`. For the
//! δ-interaction `C = Λ`; for a regularized model `C` is a transfer matrix.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{transmission_matrix, FiberContext};
use crate::mat2::{det_columns, Mat2, Spinor};
use crate::roots::{linspace, scan_roots};
use crate::{Error, Result};

/// Number of scan points across the gap.
pub const ORACLE_GRID: usize = 4096;
/// Gap-edge guard, relative to the gap edge.
const EDGE_GUARD: f64 = 1e-9;
/// Bisection tolerance, relative to the gap edge.
const ROOT_TOL: f64 = 1e-12;

/// Decaying solutions of `(H[k] − z)ψ = 0` at the interface: `(right, left)`,
/// where `right·e^{−μx}` solves on `x > 0` and `left·e^{μx}` on `x < 0`.
///
/// The two spinors are scaled representations of
/// `(1, i(k ± μ)/(z + m))` that never vanish inside the gap, so the matching
/// determinant has no spurious zeros or poles (in particular at `z = −m`).
pub fn decaying_spinors(ctx: &FiberContext, z: f64) -> (Spinor, Spinor) {
    let (m, k) = (ctx.mass(), ctx.k);
    let mu = ctx.mu(z);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    // (z + m, i(k + μ)) ∝ (k − μ, i(z − m)) since (k + μ)(k − μ) = (z + m)(z − m)
    let right = if k >= 0.0 {
        [c(z + m, 0.0), c(0.0, k + mu)]
    } else {
        [c(k - mu, 0.0), c(0.0, z - m)]
    };
    let left = if k <= 0.0 {
        [c(z + m, 0.0), c(0.0, k - mu)]
    } else {
        [c(k + mu, 0.0), c(0.0, z - m)]
    };
    (right, left)
}

/// Roots in the gap of `z ↦ det[R(z), C(z) L(z)]` for an arbitrary connection
/// matrix `C(z)` whose entries have the form `p·[[a, ib], [ic, d]]` with
/// `a, b, c, d` real and a phase `p` independent of `z`. The determinant is
/// then `p·i·(real)`, so its rotated imaginary part is a real function whose
/// sign changes are the eigenvalues.
pub fn matching_roots<F: Fn(f64) -> Mat2>(ctx: &FiberContext, connection: F) -> Result<Vec<f64>> {
    let edge = ctx.check_gap()?;
    let theta = phase_of(&connection(0.0));
    let rot = Complex64::from_polar(1.0, -theta);
    let f = |z: f64| {
        let (r, l) = decaying_spinors(ctx, z);
        (rot * det_columns(r, connection(z).apply(l))).im
    };
    let guard = EDGE_GUARD * edge;
    let grid = linspace(-edge + guard, edge - guard, ORACLE_GRID);
    Ok(scan_roots(f, &grid, ROOT_TOL * edge))
}

/// Phase `θ` such that `e^{−iθ}·C` has a real diagonal and an imaginary
/// off-diagonal, read off the largest entry.
fn phase_of(c: &Mat2) -> f64 {
    let e = c.entries();
    let (idx, _) = e
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, v)| if v.norm() > best.1 { (i, v.norm()) } else { best });
    let arg = e[idx].arg();
    if idx == 0 || idx == 3 {
        arg
    } else {
        arg - core::f64::consts::FRAC_PI_2
    }
}

/// Eigenvalues of `H[k]` from the matching determinant with `C = Λ`.
/// Works for any `ω`.
pub fn matching_oracle(ctx: &FiberContext) -> Result<Vec<f64>> {
    ctx.check_gap()?;
    if ctx.coupling.classify().is_confining {
        return Err(Error::ConfiningRegime);
    }
    let lambda = transmission_matrix(&ctx.coupling)?.lambda_matrix;
    matching_roots(ctx, |_| lambda)
}
