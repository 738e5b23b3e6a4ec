//! Complex 2×2 matrices with the Pauli basis built in.
//!
//! Everything in this crate that acts on spinors (transmission matrices,
//! Green kernels, transfer matrices) is a [`Mat2`]. The closed-form
//! exponential [`Mat2::exp_closed`] is exact up to rounding for every 2×2
//! matrix, which is what makes the square-profile transfer matrices in
//! [`crate::approx`] free of ODE discretization error.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// A two-component spinor, `(ψ¹, ψ²)`.
pub type Spinor = [Complex64; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Relative threshold below which a determinant counts as zero.
pub const SINGULAR_TOL: f64 = 1e-14;

/// Below this `|ν|` the exponential switches to truncated Taylor series for
/// `cos ν` and `sin ν / ν`.
const SMALL_NU: f64 = 1e-4;

/// Row-major complex 2×2 matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    e: [Complex64; 4],
}

pub const SIGMA0: Mat2 = Mat2 { e: [ONE, ZERO, ZERO, ONE] };
pub const SIGMA1: Mat2 = Mat2 { e: [ZERO, ONE, ONE, ZERO] };
pub const SIGMA2: Mat2 = Mat2 {
    e: [ZERO, Complex64::new(0.0, -1.0), I, ZERO],
};
pub const SIGMA3: Mat2 = Mat2 {
    e: [ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0)],
};

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 { e: [ZERO; 4] };
    pub const IDENTITY: Mat2 = SIGMA0;

    #[inline]
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { e: [a11, a12, a21, a22] }
    }

    /// Like [`Mat2::new`] but rejects NaN or infinite entries.
    pub fn try_new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Result<Self> {
        let m = Mat2::new(a11, a12, a21, a22);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(
            Complex64::new(a11, 0.0),
            Complex64::new(a12, 0.0),
            Complex64::new(a21, 0.0),
            Complex64::new(a22, 0.0),
        )
    }

    /// Matrix whose columns are `a` and `b`.
    pub fn from_columns(a: Spinor, b: Spinor) -> Self {
        Mat2::new(a[0], b[0], a[1], b[1])
    }

    #[inline]
    pub fn entries(&self) -> [Complex64; 4] {
        self.e
    }

    /// Entry at `(row, col)`, zero-based.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.e[2 * row + col]
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().fold(0.0, |acc, c| acc.max(c.norm()))
    }

    #[inline]
    pub fn det(&self) -> Complex64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    #[inline]
    pub fn trace(&self) -> Complex64 {
        self.e[0] + self.e[3]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(self.e[0].conj(), self.e[2].conj(), self.e[1].conj(), self.e[3].conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Mat2 { e: self.e.map(|x| x * c) }
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.max_abs();
        if !(det.norm() > SINGULAR_TOL * scale * scale) {
            return Err(Error::SingularMatrix { det: det.norm(), scale });
        }
        let inv = ONE / det;
        Ok(Mat2::new(self.e[3] * inv, -self.e[1] * inv, -self.e[2] * inv, self.e[0] * inv))
    }

    #[inline]
    pub fn apply(&self, v: Spinor) -> Spinor {
        [self.e[0] * v[0] + self.e[1] * v[1], self.e[2] * v[0] + self.e[3] * v[1]]
    }

    /// Largest entry difference, divided by `max(1, max|a|, max|b|)`.
    pub fn scaled_diff(&self, other: &Mat2) -> f64 {
        let scale = 1.0f64.max(self.max_abs()).max(other.max_abs());
        (*self - *other).max_abs() / scale
    }

    pub fn pauli(&self) -> PauliDecomposition {
        let half = 0.5;
        PauliDecomposition {
            c0: (self.e[0] + self.e[3]) * half,
            c1: (self.e[1] + self.e[2]) * half,
            c2: I * (self.e[1] - self.e[2]) * half,
            c3: (self.e[0] - self.e[3]) * half,
        }
    }

    /// Hermiticity by direct comparison with the conjugate transpose.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.scaled_diff(&self.adjoint()) <= tol
    }

    /// `exp(B)` from the closed form
    /// `e^{tr B/2} (cos ν σ0 + sin ν / ν (B - tr B/2 σ0))`,
    /// `ν = sqrt(det B - (tr B/2)²)`.
    ///
    /// `cos ν` and `sin ν / ν` are even in `ν`, so the principal square root
    /// is as good as the other branch.
    pub fn exp_closed(&self) -> Self {
        let half_tr = self.trace() * 0.5;
        let nu_sq = self.det() - half_tr * half_tr;
        let nu = nu_sq.sqrt();
        let (cos_nu, sinc_nu) = if nu.norm() < SMALL_NU {
            // 4-term Taylor series, truncation error ~ |ν|^8 / 8!.
            let n2 = nu_sq;
            let n4 = n2 * n2;
            let n6 = n4 * n2;
            (
                ONE - n2 / 2.0 + n4 / 24.0 - n6 / 720.0,
                ONE - n2 / 6.0 + n4 / 120.0 - n6 / 5040.0,
            )
        } else {
            (nu.cos(), nu.sin() / nu)
        };
        let shifted = *self - SIGMA0.scale(half_tr);
        (SIGMA0.scale(cos_nu) + shifted.scale(sinc_nu)).scale(half_tr.exp())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            e: [
                self.e[0] + rhs.e[0],
                self.e[1] + rhs.e[1],
                self.e[2] + rhs.e[2],
                self.e[3] + rhs.e[3],
            ],
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2 { e: self.e.map(|x| -x) }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        )
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Complex64) -> Mat2 {
        self.scale(rhs)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: f64) -> Mat2 {
        Mat2 { e: self.e.map(|x| x * rhs) }
    }
}

/// Coefficients of `c0 σ0 + c1 σ1 + c2 σ2 + c3 σ3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDecomposition {
    pub c0: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
}

impl PauliDecomposition {
    pub fn recompose(&self) -> Mat2 {
        SIGMA0 * self.c0 + SIGMA1 * self.c1 + SIGMA2 * self.c2 + SIGMA3 * self.c3
    }

    /// A matrix is hermitian iff its four Pauli coefficients are real.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = 1.0f64
            .max(self.c0.norm())
            .max(self.c1.norm())
            .max(self.c2.norm())
            .max(self.c3.norm());
        [self.c0, self.c1, self.c2, self.c3]
            .iter()
            .all(|c| c.im.abs() <= tol * scale)
    }
}

/// `det [a | b]` for two column spinors.
#[inline]
pub fn det_columns(a: Spinor, b: Spinor) -> Complex64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn spinor_norm_sqr(v: Spinor) -> f64 {
    v[0].norm_sqr() + v[1].norm_sqr()
}

pub fn spinor_scale(v: Spinor, c: Complex64) -> Spinor {
    [v[0] * c, v[1] * c]
}

pub fn spinor_sub(a: Spinor, b: Spinor) -> Spinor {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn spinor_add(a: Spinor, b: Spinor) -> Spinor {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn spinor_max_abs(v: Spinor) -> f64 {
    v[0].norm().max(v[1].norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_products() {
        assert_eq!(SIGMA1 * SIGMA1, SIGMA0);
        assert_eq!(SIGMA1 * SIGMA2, SIGMA3 * I);
        assert_eq!(SIGMA2 * SIGMA1, SIGMA3 * (-I));
    }

    #[test]
    fn anticommutators() {
        let s = [SIGMA1, SIGMA2, SIGMA3];
        for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                let anti = *a * *b + *b * *a;
                let expected = if i == j { SIGMA0 * 2.0 } else { Mat2::ZERO };
                assert_eq!(anti, expected, "σ{}σ{}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn det_trace_inverse() {
        assert_eq!(SIGMA1.det(), c(-1.0, 0.0));
        assert_eq!(SIGMA3.trace(), c(0.0, 0.0));
        assert_eq!(SIGMA0.inverse().unwrap(), SIGMA0);
        let a = Mat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(3.0, 0.0), c(0.2, -1.0));
        let prod = a.inverse().unwrap() * a;
        assert!(prod.scaled_diff(&SIGMA0) < 1e-12);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = Mat2::from_real(1.0, 2.0, 2.0, 4.0);
        assert!(matches!(a.inverse(), Err(Error::SingularMatrix { .. })));
        assert!(matches!(Mat2::ZERO.inverse(), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn try_new_rejects_nan() {
        assert_eq!(
            Mat2::try_new(c(f64::NAN, 0.0), ZERO, ZERO, ONE),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(Mat2::ZERO.exp_closed(), SIGMA0);
    }

    #[test]
    fn exp_quarter_turn() {
        // exp(-i π/2 σ1) = cos(π/2) σ0 - i sin(π/2) σ1 = -i σ1
        let b = SIGMA1 * c(0.0, -core::f64::consts::FRAC_PI_2);
        let e = b.exp_closed();
        assert!(e.scaled_diff(&(SIGMA1 * (-I))) < 1e-15);
    }

    #[test]
    fn exp_small_nu_branch_is_continuous() {
        // nilpotent plus a tiny rotation on both sides of the series threshold
        for &eps in &[1e-3, 2e-4, 9e-5, 1e-7, 0.0] {
            let b = Mat2::new(ZERO, c(1.0, 0.0), c(-eps * eps, 0.0), ZERO);
            let e = b.exp_closed();
            // exact: [[cos e, sin e / e], [-e sin e, cos e]]
            let (s, co) = (eps.sin(), eps.cos());
            let sinc = if eps == 0.0 { 1.0 } else { s / eps };
            let exact = Mat2::from_real(co, sinc, -eps * s, co);
            assert!(e.scaled_diff(&exact) < 1e-15, "eps = {eps}");
        }
    }

    #[test]
    fn pauli_round_trip_and_hermiticity() {
        let h = Mat2::new(c(1.5, 0.0), c(0.3, -0.7), c(0.3, 0.7), c(-2.0, 0.0));
        let p = h.pauli();
        assert!(p.is_real(1e-15));
        assert!(h.is_hermitian(1e-15));
        assert!(p.recompose().scaled_diff(&h) < 1e-15);

        let nh = Mat2::new(c(1.0, 1.0), ZERO, ZERO, ONE);
        assert!(!nh.pauli().is_real(1e-12));
        assert!(!nh.is_hermitian(1e-12));
    }
}
