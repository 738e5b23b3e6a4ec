//! Interaction parameters `(η, τ, λ, ω)` and mass `m`, regime flags, and the
//! two parameter maps that preserve the fiber spectra.

use num_complex::Complex64;

use crate::mat2::{Mat2, SIGMA0, SIGMA1, SIGMA2, SIGMA3};
use crate::{Error, Result};

/// Absolute tolerance for the regime boundaries `d = ±4`, `d = 0`.
pub const REGIME_TOL: f64 = 1e-12;

/// Strengths of the electrostatic (`η`), Lorentz scalar (`τ`), anomalous
/// magnetic (`λ`) and `σ1` (`ω`) parts of the interaction, plus the mass.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coupling {
    pub eta: f64,
    pub tau: f64,
    pub lambda: f64,
    pub omega: f64,
    pub mass: f64,
}

impl Coupling {
    pub const fn new(eta: f64, tau: f64, lambda: f64, omega: f64, mass: f64) -> Self {
        Coupling { eta, tau, lambda, omega, mass }
    }

    /// Coupling with `ω = 0`.
    pub const fn reduced(eta: f64, tau: f64, lambda: f64, mass: f64) -> Self {
        Coupling::new(eta, tau, lambda, 0.0, mass)
    }

    pub fn with_mass(self, mass: f64) -> Self {
        Coupling { mass, ..self }
    }

    /// `d = η² − τ² − λ²`.
    #[inline]
    pub fn d(&self) -> f64 {
        self.eta * self.eta - self.tau * self.tau - self.lambda * self.lambda
    }

    pub fn is_finite(&self) -> bool {
        [self.eta, self.tau, self.lambda, self.omega, self.mass]
            .iter()
            .all(|v| v.is_finite())
    }

    /// `M = η σ0 + τ σ3 + λ σ2 + ω σ1`.
    pub fn interaction_matrix(&self) -> Mat2 {
        SIGMA0 * self.eta + SIGMA3 * self.tau + SIGMA2 * self.lambda + SIGMA1 * self.omega
    }

    /// `(η, τ, λ)` multiplied by `s`; `ω` and the mass are kept.
    pub fn scaled(&self, s: f64) -> Self {
        Coupling {
            eta: s * self.eta,
            tau: s * self.tau,
            lambda: s * self.lambda,
            ..*self
        }
    }

    pub fn classify(&self) -> RegimeClassification {
        classify(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeClassification {
    pub d: f64,
    /// `ω = 0` and `d = −4`.
    pub is_confining: bool,
    /// `(d/4 − 1)² = λ²`.
    pub is_critical: bool,
    /// `d = 4`: the characteristic equation is linear in `z`.
    pub is_case_d4: bool,
    /// `det(2iσ1 − M) ≠ 0`, i.e. the transmission matrix exists.
    pub det_condition: bool,
}

pub fn classify(c: &Coupling) -> RegimeClassification {
    let d = c.d();
    let is_confining = c.omega == 0.0 && (d + 4.0).abs() <= REGIME_TOL;
    let crit = (d / 4.0 - 1.0).powi(2) - c.lambda * c.lambda;
    RegimeClassification {
        d,
        is_confining,
        is_critical: crit.abs() <= REGIME_TOL,
        is_case_d4: (d - 4.0).abs() <= REGIME_TOL,
        det_condition: !is_confining,
    }
}

/// Parameters of the unitary map that removes `ω`: the fiber operator with
/// `(η, τ, λ, ω)` equals `U H[Xη, Xτ, Xλ, 0] U*`, where `U` multiplies the
/// left half-line by `phase`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeReduction {
    pub x_factor: f64,
    pub phase: Complex64,
    pub reduced: Coupling,
}

impl GaugeReduction {
    fn identity(c: &Coupling) -> Self {
        GaugeReduction {
            x_factor: 1.0,
            phase: Complex64::new(1.0, 0.0),
            reduced: *c,
        }
    }

    fn from_root(c: &Coupling, x: f64) -> Self {
        let mut reduced = c.scaled(x);
        reduced.omega = 0.0;
        GaugeReduction {
            x_factor: x,
            phase: phase_from_d(c.d(), c.omega, x),
            reduced,
        }
    }

    /// Residual of `dX² + (4 − d + ω²)X − 4` for the original coupling.
    pub fn quadratic_residual(&self, original: &Coupling) -> f64 {
        let d = original.d();
        let x = self.x_factor;
        d * x * x + (4.0 - d + original.omega * original.omega) * x - 4.0
    }
}

/// `(4 + dX + 2iω) / (4 + dX − 2iω)`.
pub fn phase_from_d(d: f64, omega: f64, x: f64) -> Complex64 {
    let a = 4.0 + d * x;
    Complex64::new(a, 2.0 * omega) / Complex64::new(a, -2.0 * omega)
}

/// `(ωX + 2(1 − X)i) / (ωX − 2(1 − X)i)`, the second expression for the
/// phase. Agrees with [`phase_from_d`] whenever `X` solves the quadratic.
pub fn phase_from_x(omega: f64, x: f64) -> Complex64 {
    let b = 2.0 * (1.0 - x);
    Complex64::new(omega * x, b) / Complex64::new(omega * x, -b)
}

/// Removes `ω` using the root `X = (d − 4 − ω² + sqrt((d − 4 − ω²)² + 16d)) / 2d`
/// (or `4/(4 + ω²)` for `d = 0`). For `ω = 0` returns the identity map.
pub fn reduce_omega(c: &Coupling) -> GaugeReduction {
    if c.omega == 0.0 {
        return GaugeReduction::identity(c);
    }
    GaugeReduction::from_root(c, plus_root(c.d(), c.omega))
}

/// Every real root of the gauge quadratic: two for `d ≠ 0`, one for `d = 0`.
/// The first entry is the one [`reduce_omega`] returns.
pub fn reduce_omega_all(c: &Coupling) -> alloc::vec::Vec<GaugeReduction> {
    let mut out = alloc::vec::Vec::with_capacity(2);
    if c.omega == 0.0 {
        out.push(GaugeReduction::identity(c));
        return out;
    }
    let d = c.d();
    let xp = plus_root(d, c.omega);
    out.push(GaugeReduction::from_root(c, xp));
    if d.abs() > REGIME_TOL {
        // product of the roots is -4/d
        out.push(GaugeReduction::from_root(c, -4.0 / (d * xp)));
    }
    out
}

fn plus_root(d: f64, omega: f64) -> f64 {
    // Rationalized form of (−b + sqrt(b² + 16d)) / 2d, finite at d = 0.
    let b = 4.0 - d + omega * omega;
    let disc = b * b + 16.0 * d;
    8.0 / (b + disc.sqrt())
}

/// The partner coupling `(−4/d)(η, τ, λ)` whose fiber operators are unitarily
/// equivalent to those of `c`.
pub fn minus_four_over_d_partner(c: &Coupling) -> Result<Coupling> {
    if c.omega != 0.0 {
        return Err(Error::InvalidRegime("the -4/d partner requires omega = 0"));
    }
    let d = c.d();
    if (d + 4.0).abs() <= REGIME_TOL || d.abs() <= REGIME_TOL {
        return Err(Error::InvalidRegime("the -4/d partner requires d not in {-4, 0}"));
    }
    Ok(c.scaled(-4.0 / d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_coupling() {
        let r = classify(&Coupling::default());
        assert_eq!(r.d, 0.0);
        assert!(!r.is_critical && !r.is_confining && !r.is_case_d4 && r.det_condition);
    }

    #[test]
    fn electrostatic_two_is_critical() {
        let r = classify(&Coupling::reduced(2.0, 0.0, 0.0, 1.0));
        assert_eq!(r.d, 4.0);
        assert!(r.is_critical && r.is_case_d4 && !r.is_confining);
    }

    #[test]
    fn magnetic_two_is_critical_and_confining() {
        let r = classify(&Coupling::reduced(0.0, 0.0, 2.0, 1.0));
        assert_eq!(r.d, -4.0);
        assert!(r.is_confining && r.is_critical && !r.det_condition);
    }

    #[test]
    fn omega_breaks_confinement() {
        let r = classify(&Coupling::new(0.0, 0.0, 2.0, 0.5, 1.0));
        assert!(!r.is_confining && r.det_condition);
    }

    #[test]
    fn reduce_pure_omega() {
        let g = reduce_omega(&Coupling::new(0.0, 0.0, 0.0, 1.0, 1.0));
        assert!((g.x_factor - 0.8).abs() < 1e-15);
        assert!((g.phase - Complex64::new(0.6, 0.8)).norm() < 1e-15);
        assert_eq!(g.reduced, Coupling::reduced(0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn reduce_without_omega_is_identity() {
        let c = Coupling::reduced(1.0, 2.0, 3.0, 0.5);
        let g = reduce_omega(&c);
        assert_eq!(g.x_factor, 1.0);
        assert_eq!(g.phase, Complex64::new(1.0, 0.0));
        assert_eq!(g.reduced, c);
    }

    #[test]
    fn both_roots_solve_the_quadratic() {
        let c = Coupling::new(1.5, -0.3, 0.7, -1.2, 1.0);
        let all = reduce_omega_all(&c);
        assert_eq!(all.len(), 2);
        for g in &all {
            assert!(g.quadratic_residual(&c).abs() < 1e-12);
            assert!((g.phase.norm() - 1.0).abs() < 1e-14);
            assert!((g.phase - phase_from_x(c.omega, g.x_factor)).norm() < 1e-12);
        }
        assert_eq!(all[0], reduce_omega(&c));
    }

    #[test]
    fn partner_examples() {
        let p = minus_four_over_d_partner(&Coupling::reduced(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!((p.eta, p.tau, p.lambda), (-4.0, 0.0, 0.0));
        let p = minus_four_over_d_partner(&Coupling::reduced(3.0, 2.0, 1.0, 0.0)).unwrap();
        assert_eq!((p.eta, p.tau, p.lambda), (-3.0, -2.0, -1.0));
        let p = minus_four_over_d_partner(&Coupling::reduced(0.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!((p.eta, p.tau, p.lambda), (0.0, 0.0, 4.0));
    }

    #[test]
    fn partner_rejects_boundaries() {
        for c in [
            Coupling::reduced(0.0, 0.0, 0.0, 1.0),
            Coupling::reduced(0.0, 2.0, 0.0, 1.0),
            Coupling::new(1.0, 0.0, 0.0, 1.0, 1.0),
        ] {
            assert!(matches!(minus_four_over_d_partner(&c), Err(Error::InvalidRegime(_))));
        }
    }

    #[test]
    fn interaction_matrix_entries() {
        let m = Coupling::new(1.0, 2.0, 3.0, 4.0, 0.0).interaction_matrix();
        // [[η+τ, ω−iλ], [ω+iλ, η−τ]]
        let expected = Mat2::new(
            Complex64::new(3.0, 0.0),
            Complex64::new(4.0, -3.0),
            Complex64::new(4.0, 3.0),
            Complex64::new(-1.0, 0.0),
        );
        assert_eq!(m, expected);
    }
}
