use num_complex::Complex64;

use super::{fiber_eigenvalues, FiberContext};
use crate::mat2::{Mat2, SIGMA1};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ξ_k(z) = sqrt(z² − k² − m²)` on the branch with `Im ξ > 0` away from
/// `[0, ∞)`.
pub fn xi(z: Complex64, k: f64, m: f64) -> Complex64 {
    let w = z * z - k * k - m * m;
    let s = w.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Integral kernel of the free resolvent `(H[k] − z)⁻¹`:
/// `G_z(x) = (i/2ξ) e^{iξ|x|} (Q + ξ sgn(x) σ1)` with
/// `Q = [[z + m, −ik], [ik, z − m]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenKernel {
    pub z: Complex64,
    pub xi: Complex64,
    /// `C_z = (i/2ξ) Q`, the mean of the one-sided limits at `x = 0`.
    pub c_matrix: Mat2,
    pub k: f64,
    pub mass: f64,
}

impl GreenKernel {
    fn new(z: Complex64, k: f64, m: f64) -> Self {
        let xi = xi(z, k, m);
        let q = q_matrix(z, k, m);
        GreenKernel {
            z,
            xi,
            c_matrix: q * (I / (xi * 2.0)),
            k,
            mass: m,
        }
    }

    pub fn q_matrix(&self) -> Mat2 {
        q_matrix(self.z, self.k, self.mass)
    }

    /// `G_z(x)`; at `x = 0` this is `C_z` (sgn 0 = 0).
    pub fn eval(&self, x: f64) -> Mat2 {
        let s = if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            0.0
        };
        self.eval_branch(x, s)
    }

    /// One-sided limit `G_z(0±)` for `side = ±1`.
    pub fn at_zero(&self, side: f64) -> Mat2 {
        self.eval_branch(0.0, side.signum())
    }

    /// `G_z(x − y)`.
    pub fn kernel(&self, x: f64, y: f64) -> Mat2 {
        self.eval(x - y)
    }

    /// Exponential decay rate `Im ξ` of the kernel.
    pub fn decay_rate(&self) -> f64 {
        self.xi.im
    }

    fn eval_branch(&self, x: f64, sgn: f64) -> Mat2 {
        let pref = I / (self.xi * 2.0) * (I * self.xi * x.abs()).exp();
        (self.q_matrix() + SIGMA1 * (self.xi * sgn)) * pref
    }
}

fn q_matrix(z: Complex64, k: f64, m: f64) -> Mat2 {
    Mat2::new(z + m, Complex64::new(0.0, -k), Complex64::new(0.0, k), z - m)
}

/// Free Green kernel of the fiber at `z`. Real `z` is accepted inside the
/// gap unless it is an eigenvalue of the coupled fiber operator.
pub fn green_kernel(ctx: &FiberContext, z: Complex64) -> Result<GreenKernel> {
    let (k, m) = (ctx.k, ctx.mass());
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput("non-finite spectral parameter"));
    }
    if z.im == 0.0 {
        let edge = ctx.gap_edge();
        if !(z.re.abs() < edge) {
            return Err(Error::SpectralPoint);
        }
        if !ctx.coupling.classify().is_confining {
            let tol = 1e-12 * edge;
            if fiber_eigenvalues(ctx)?.iter().any(|(e, _)| (e - z.re).abs() <= tol) {
                return Err(Error::SpectralPoint);
            }
        }
    }
    Ok(GreenKernel::new(z, k, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::Coupling;

    fn ctx(m: f64, k: f64) -> FiberContext {
        FiberContext::new(Coupling::reduced(0.0, 0.0, 0.0, m), k)
    }

    #[test]
    fn branch_at_i() {
        let g = green_kernel(&ctx(1.0, 0.0), I).unwrap();
        assert!((g.xi - Complex64::new(0.0, 2.0f64.sqrt())).norm() < 1e-15);
        assert!((g.decay_rate() - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn branch_on_negative_real_axis_with_negative_zero() {
        let x = xi(Complex64::new(0.5, -0.0), 0.0, 1.0);
        assert!(x.im > 0.0);
    }

    #[test]
    fn jump_is_i_sigma1() {
        let g = green_kernel(&ctx(0.7, -1.3), Complex64::new(0.2, 0.9)).unwrap();
        let jump = g.at_zero(1.0) - g.at_zero(-1.0);
        assert!(jump.scaled_diff(&(SIGMA1 * I)) < 1e-15);
        let mean = (g.at_zero(1.0) + g.at_zero(-1.0)) * 0.5;
        assert!(mean.scaled_diff(&g.c_matrix) < 1e-15);
    }

    #[test]
    fn real_z_outside_gap_is_rejected() {
        assert_eq!(green_kernel(&ctx(1.0, 0.0), Complex64::new(1.5, 0.0)), Err(Error::SpectralPoint));
        let es = FiberContext::new(Coupling::reduced(1.0, 0.0, 0.0, 1.0), 0.0);
        assert_eq!(green_kernel(&es, Complex64::new(-0.6, 0.0)), Err(Error::SpectralPoint));
        assert!(green_kernel(&es, Complex64::new(0.3, 0.0)).is_ok());
    }
}
