//! Closed-form energy bands `k ↦ z(k)` of the fiber operators.

use alloc::vec;
use alloc::vec::Vec;


use super::FiberContext;
use crate::coupling::Coupling;
use crate::roots::bisect;
use crate::{Error, Result};

/// Which root of the characteristic equation a band follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchId {
    /// `d = 4`: the equation is linear and has the single root
    /// `z = −(λk + τm)/η`.
    SingleD4,
    Plus,
    Minus,
}

impl BranchId {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchId::SingleD4 => "single_d4",
            BranchId::Plus => "plus",
            BranchId::Minus => "minus",
        }
    }
}

/// Open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenInterval {
    pub lo: f64,
    pub hi: f64,
}

impl OpenInterval {
    pub const REAL_LINE: OpenInterval = OpenInterval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        OpenInterval { lo, hi }
    }

    pub fn contains(&self, k: f64) -> bool {
        self.lo < k && k < self.hi
    }

    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        self.lo < lo && hi < self.hi
    }

    /// A finite point inside the interval.
    pub fn interior_point(&self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => 0.5 * (self.lo + self.hi),
            (true, false) => self.lo + 1.0f64.max(self.lo.abs()),
            (false, true) => self.hi - 1.0f64.max(self.hi.abs()),
            (false, false) => 0.0,
        }
    }
}

/// Coefficients of the quadratic-formula roots
/// `z± = (−η(λk + τm) ± q sqrt(a k² − 2λτm k + c)) / den`, with
/// `q = |d/4 − 1|`, `a = τ² + (d/4 + 1)²`, `c = (λ² + (d/4 + 1)²) m²`,
/// `den = η² + (d/4 − 1)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticLaw {
    pub sign: f64,
    pub eta: f64,
    pub tau: f64,
    pub lambda: f64,
    pub mass: f64,
    pub q: f64,
    pub a: f64,
    pub c: f64,
    pub den: f64,
}

impl QuadraticLaw {
    fn new(coupling: &Coupling, sign: f64) -> Self {
        let d = coupling.d();
        let (eta, tau, lambda, mass) = (coupling.eta, coupling.tau, coupling.lambda, coupling.mass);
        let q = (d / 4.0 - 1.0).abs();
        let p = d / 4.0 + 1.0;
        QuadraticLaw {
            sign,
            eta,
            tau,
            lambda,
            mass,
            q,
            a: tau * tau + p * p,
            c: (lambda * lambda + p * p) * mass * mass,
            den: eta * eta + q * q,
        }
    }

    fn radicand(&self, k: f64) -> f64 {
        (self.a * k * k - 2.0 * self.lambda * self.tau * self.mass * k + self.c).max(0.0)
    }

    pub fn eval(&self, k: f64) -> f64 {
        let lin = self.lambda * k + self.tau * self.mass;
        (-self.eta * lin + self.sign * self.q * self.radicand(k).sqrt()) / self.den
    }

    pub fn derivative(&self, k: f64) -> f64 {
        let r = self.radicand(k).sqrt();
        let dr = if r > 0.0 {
            (self.a * k - self.lambda * self.tau * self.mass) / r
        } else {
            0.0
        };
        (-self.eta * self.lambda + self.sign * self.q * dr) / self.den
    }

    /// Limit as `k → dir·∞`, from the expansion
    /// `sqrt(a k² − 2λτm k + c) = sqrt(a)|k| − λτm sgn(k)/sqrt(a) + O(1/|k|)`.
    pub fn limit(&self, dir: f64) -> f64 {
        let sa = self.a.sqrt();
        let lin = (-self.eta * self.lambda * dir + self.sign * self.q * sa) / self.den;
        let scale = (self.eta * self.lambda).abs() + self.q * sa;
        if lin.abs() > 1e-12 * scale.max(1e-300) {
            return lin.signum() * f64::INFINITY;
        }
        let ltm = self.lambda * self.tau * self.mass;
        (-self.eta * self.tau * self.mass - self.sign * self.q * ltm * dir / sa) / self.den
    }
}

/// How a band depends on `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandLaw {
    /// `z = slope·k + intercept`.
    Linear { slope: f64, intercept: f64 },
    Quadratic(QuadraticLaw),
    /// `z = sign·sqrt(offset_sq + slope_sq·k²)`, the form the bands take for
    /// the pure Lorentz scalar and pure magnetic interactions.
    Hyperbolic { sign: f64, offset_sq: f64, slope_sq: f64 },
}

impl BandLaw {
    pub fn eval(&self, k: f64) -> f64 {
        match *self {
            BandLaw::Linear { slope, intercept } => slope * k + intercept,
            BandLaw::Quadratic(q) => q.eval(k),
            BandLaw::Hyperbolic { sign, offset_sq, slope_sq } => sign * (offset_sq + slope_sq * k * k).sqrt(),
        }
    }

    pub fn derivative(&self, k: f64) -> f64 {
        match *self {
            BandLaw::Linear { slope, .. } => slope,
            BandLaw::Quadratic(q) => q.derivative(k),
            BandLaw::Hyperbolic { sign, offset_sq, slope_sq } => {
                let r = (offset_sq + slope_sq * k * k).sqrt();
                if r > 0.0 {
                    sign * slope_sq * k / r
                } else {
                    0.0
                }
            }
        }
    }

    /// Limit of `z(k)` as `k → dir·∞` (`dir = ±1`); may be infinite.
    pub fn limit(&self, dir: f64) -> f64 {
        match *self {
            BandLaw::Linear { slope, intercept } => {
                if slope == 0.0 {
                    intercept
                } else {
                    (slope * dir).signum() * f64::INFINITY
                }
            }
            BandLaw::Quadratic(q) => q.limit(dir),
            BandLaw::Hyperbolic { sign, offset_sq, slope_sq } => {
                if slope_sq > 0.0 {
                    sign * f64::INFINITY
                } else {
                    sign * offset_sq.sqrt()
                }
            }
        }
    }
}

/// An energy band: a branch of fiber eigenvalues on the set of `k` where it
/// is admissible.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub branch_id: BranchId,
    pub law: BandLaw,
    /// Disjoint open intervals, sorted.
    pub domain: Vec<OpenInterval>,
    pub is_constant: bool,
    pub is_linear: bool,
    pub slope: Option<f64>,
}

impl Band {
    /// `z(k)` from the closed form, without checking the domain.
    pub fn eval(&self, k: f64) -> f64 {
        self.law.eval(k)
    }

    /// `z(k)` if `k` is in the domain.
    pub fn value(&self, k: f64) -> Option<f64> {
        self.contains(k).then(|| self.law.eval(k))
    }

    pub fn contains(&self, k: f64) -> bool {
        self.domain.iter().any(|iv| iv.contains(k))
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }
}

const LINEAR_TOL: f64 = 1e-12;

/// All bands of a coupling with `ω = 0`, `d ≠ −4`.
///
/// * `d = 4`: one linear band `z = −(λk + τm)/η` on `ℝ` (on `ℝ∖{0}` for `m = 0`).
/// * `d ≠ 4`, `m ≠ 0`: the roots `z±` restricted to where
///   `(d − 4)(ηz + λk + τm) > 0`. Empty branches are dropped.
/// * `d ≠ 4`, `m = 0`: `z±` are linear on each half-line; each admissible
///   half-line piece is returned as its own band.
pub fn bands(c: &Coupling) -> Result<Vec<Band>> {
    if c.omega != 0.0 {
        return Err(Error::InvalidRegime("bands require omega = 0; apply the gauge reduction first"));
    }
    let class = c.classify();
    if class.is_confining {
        return Err(Error::ConfiningRegime);
    }
    if !c.is_finite() {
        return Err(Error::InvalidInput("non-finite coupling"));
    }
    if class.is_case_d4 {
        return Ok(vec![d4_band(c)]);
    }
    if c.mass == 0.0 {
        return Ok(massless_bands(c));
    }
    let mut out = Vec::new();
    for (id, sign) in [(BranchId::Plus, 1.0), (BranchId::Minus, -1.0)] {
        let law = QuadraticLaw::new(c, sign);
        let domain = admissible_domain(c, &law);
        if !domain.is_empty() {
            out.push(Band {
                branch_id: id,
                law: BandLaw::Quadratic(law),
                domain,
                is_constant: false,
                is_linear: false,
                slope: None,
            });
        }
    }
    Ok(out)
}

fn d4_band(c: &Coupling) -> Band {
    let slope = -c.lambda / c.eta;
    let intercept = -c.tau * c.mass / c.eta;
    let domain = if c.mass == 0.0 {
        vec![OpenInterval::new(f64::NEG_INFINITY, 0.0), OpenInterval::new(0.0, f64::INFINITY)]
    } else {
        vec![OpenInterval::REAL_LINE]
    };
    let is_constant = c.lambda.abs() <= LINEAR_TOL;
    Band {
        branch_id: BranchId::SingleD4,
        law: BandLaw::Linear {
            slope: if is_constant { 0.0 } else { slope },
            intercept,
        },
        domain,
        is_constant,
        is_linear: true,
        slope: Some(if is_constant { 0.0 } else { slope }),
    }
}

fn massless_bands(c: &Coupling) -> Vec<Band> {
    let d = c.d();
    let q = (d / 4.0 - 1.0).abs();
    let p = d / 4.0 + 1.0;
    let sa = (c.tau * c.tau + p * p).sqrt();
    let den = c.eta * c.eta + q * q;
    let scale = (c.eta * c.lambda).abs() + q * sa;
    let mut out = Vec::new();
    for (id, sign) in [(BranchId::Plus, 1.0), (BranchId::Minus, -1.0)] {
        for side in [-1.0, 1.0] {
            // z = (−ηλk + sign·q·sqrt(a)|k|)/den with |k| = side·k
            let mut slope = (-c.eta * c.lambda + sign * q * sa * side) / den;
            let is_constant = slope.abs() <= LINEAR_TOL * (scale / den).max(1.0);
            if is_constant {
                slope = 0.0;
            }
            // (d − 4)(η·slope + λ)·k > 0 on the whole half-line
            let g = (d - 4.0) * (c.eta * slope + c.lambda) * side;
            let g_scale = (d - 4.0).abs() * ((c.eta * slope).abs() + c.lambda.abs());
            if !(g > LINEAR_TOL * g_scale.max(1e-300)) {
                continue;
            }
            let domain = if side < 0.0 {
                OpenInterval::new(f64::NEG_INFINITY, 0.0)
            } else {
                OpenInterval::new(0.0, f64::INFINITY)
            };
            out.push(Band {
                branch_id: id,
                law: BandLaw::Linear { slope, intercept: 0.0 },
                domain: vec![domain],
                is_constant,
                is_linear: true,
                slope: Some(slope),
            });
        }
    }
    out
}

/// `g(k) = (d − 4)(η z(k) + λk + τm)`; the branch is an eigenvalue iff `g > 0`.
fn admissibility(c: &Coupling, law: &QuadraticLaw, k: f64) -> f64 {
    (c.d() - 4.0) * (c.eta * law.eval(k) + c.lambda * k + c.tau * c.mass)
}

fn admissibility_scale(c: &Coupling, k: f64) -> f64 {
    let e = c.mass.hypot(k);
    (c.d() - 4.0).abs() * (c.eta.abs() * e + c.lambda.abs() * k.abs() + c.tau.abs() * c.mass.abs())
}

/// `k` values where some branch touches the gap edge `±sqrt(m² + k²)` while
/// `ηz + λk + τm = 0`: roots of
/// `(λ² − η²)k² + 2λτm k + (τ² − η²)m² = 0`.
fn edge_touch_candidates(c: &Coupling) -> Vec<f64> {
    let (eta, tau, lam, m) = (c.eta, c.tau, c.lambda, c.mass);
    let a2 = lam * lam - eta * eta;
    let a1 = 2.0 * lam * tau * m;
    let a0 = (tau * tau - eta * eta) * m * m;
    let scale = (lam * lam + eta * eta + tau * tau) * (1.0 + m.abs()).powi(2);
    let tiny = 1e-14 * scale;
    let mut roots = Vec::new();
    if a2.abs() <= tiny {
        if a1.abs() > tiny {
            roots.push(-a0 / a1);
        }
    } else {
        let disc = a1 * a1 - 4.0 * a2 * a0;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let t = -0.5 * (a1 + a1.signum() * sq);
            if t != 0.0 {
                roots.push(t / a2);
                roots.push(a0 / t);
            } else {
                roots.push(0.0);
            }
        }
    }
    roots.retain(|r| r.is_finite());
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * a.abs().max(1.0));
    roots
}

fn admissible_domain(c: &Coupling, law: &QuadraticLaw) -> Vec<OpenInterval> {
    let cands = edge_touch_candidates(c);
    let g = |k: f64| admissibility(c, law, k);
    let positive = |k: f64| g(k) > 1e-13 * admissibility_scale(c, k).max(1e-300);

    // Pieces between consecutive candidates.
    let mut cuts = Vec::with_capacity(cands.len() + 2);
    cuts.push(f64::NEG_INFINITY);
    cuts.extend_from_slice(&cands);
    cuts.push(f64::INFINITY);
    let mut pieces: Vec<(f64, f64, bool)> = Vec::new();
    for w in cuts.windows(2) {
        let iv = OpenInterval::new(w[0], w[1]);
        pieces.push((w[0], w[1], positive(iv.interior_point())));
    }

    let mut out: Vec<OpenInterval> = Vec::new();
    for (i, &(lo, hi, ok)) in pieces.iter().enumerate() {
        if !ok {
            continue;
        }
        let lo = if i > 0 && !pieces[i - 1].2 { refine_edge(&g, lo) } else { lo };
        let hi = if i + 1 < pieces.len() && !pieces[i + 1].2 { refine_edge(&g, hi) } else { hi };
        match out.last_mut() {
            // Admissible on both sides of a candidate where only the other
            // branch touches the edge: the candidate itself belongs to the domain.
            Some(prev) if prev.hi == lo && positive(lo) => prev.hi = hi,
            _ => out.push(OpenInterval::new(lo, hi)),
        }
    }
    out
}

/// Polishes a sign change of `g` near the algebraic candidate `k0`.
fn refine_edge<G: Fn(f64) -> f64>(g: &G, k0: f64) -> f64 {
    let delta = 1e-7 * k0.abs().max(1.0);
    let (a, b) = (k0 - delta, k0 + delta);
    let (ga, gb) = (g(a), g(b));
    if ga.is_finite() && gb.is_finite() && (ga > 0.0) != (gb > 0.0) {
        bisect(g, a, b, ga, gb, 1e-12 * k0.abs().max(1.0))
    } else {
        k0
    }
}

/// `sqrt(m² + k² − z²)(d − 4) − 4(ηz + λk + τm)`; zero exactly at the fiber
/// eigenvalues that pass the admissibility condition.
pub fn char_eq_residual(ctx: &FiberContext, z: f64) -> Result<f64> {
    let c = &ctx.coupling;
    if c.omega != 0.0 {
        return Err(Error::InvalidRegime("characteristic equation requires omega = 0"));
    }
    let edge = ctx.gap_edge();
    if !(z.abs() <= edge) {
        return Err(Error::DomainError { z, edge });
    }
    Ok(ctx.mu(z) * (c.d() - 4.0) - 4.0 * (c.eta * z + c.lambda * ctx.k + c.tau * c.mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn electrostatic_two_has_flat_band() {
        let b = bands(&Coupling::reduced(2.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_constant && b[0].is_linear);
        assert_eq!(b[0].domain, vec![OpenInterval::REAL_LINE]);
        assert_eq!(b[0].eval(1.7), 0.0);
    }

    #[test]
    fn d4_linear_band() {
        let b = bands(&Coupling::reduced(3.0, 2.0, 1.0, 1.0)).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].slope, Some(-1.0 / 3.0));
        assert!(approx(b[0].eval(0.0), -2.0 / 3.0, 1e-15));
        assert!(!b[0].is_constant);
    }

    #[test]
    fn lorentz_minus_one() {
        let c = Coupling::reduced(0.0, -1.0, 0.0, 1.0);
        let b = bands(&c).unwrap();
        assert_eq!(b.len(), 2);
        for band in &b {
            assert_eq!(band.domain, vec![OpenInterval::REAL_LINE]);
        }
        assert!(approx(b[0].eval(0.0), 0.6, 1e-15));
        assert!(approx(b[1].eval(0.0), -0.6, 1e-15));
        let k: f64 = 1.3;
        assert!(approx(b[0].eval(k), (0.36 + k * k).sqrt(), 1e-14));
    }

    #[test]
    fn massless_constant_and_linear_pieces() {
        let b = bands(&Coupling::reduced(3.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(b.len(), 2);
        let neg = b.iter().find(|x| x.domain[0].hi == 0.0).unwrap();
        let pos = b.iter().find(|x| x.domain[0].lo == 0.0).unwrap();
        assert!(pos.is_constant);
        assert_eq!(pos.eval(2.0), 0.0);
        assert!(!neg.is_constant && neg.is_linear);
        assert!(approx(neg.slope.unwrap(), -0.6, 1e-15));
    }

    #[test]
    fn free_coupling_has_no_bands() {
        assert!(bands(&Coupling::reduced(0.0, 0.0, 0.0, 1.0)).unwrap().is_empty());
        assert!(bands(&Coupling::reduced(0.0, 0.0, 0.0, 0.0)).unwrap().is_empty());
    }

    #[test]
    fn magnetic_band_lives_on_one_half_line() {
        let b = bands(&Coupling::reduced(0.0, 0.0, 1.0, 1.0)).unwrap();
        assert_eq!(b.len(), 2);
        for band in &b {
            assert_eq!(band.domain.len(), 1);
            assert_eq!(band.domain[0].lo, f64::NEG_INFINITY);
            assert!(band.domain[0].hi.abs() < 1e-12);
        }
    }

    #[test]
    fn confining_and_omega_are_rejected() {
        assert_eq!(bands(&Coupling::reduced(0.0, 0.0, 2.0, 1.0)), Err(Error::ConfiningRegime));
        assert!(matches!(
            bands(&Coupling::new(1.0, 0.0, 0.0, 1.0, 1.0)),
            Err(Error::InvalidRegime(_))
        ));
    }

    #[test]
    fn residual_examples() {
        let free = FiberContext::new(Coupling::reduced(0.0, 0.0, 0.0, 1.0), 0.0);
        assert!(approx(char_eq_residual(&free, 0.5).unwrap(), -4.0 * 0.75f64.sqrt(), 1e-15));
        let es = FiberContext::new(Coupling::reduced(2.0, 0.0, 0.0, 1.0), 0.0);
        assert_eq!(char_eq_residual(&es, 0.0).unwrap(), 0.0);
        let ls = FiberContext::new(Coupling::reduced(0.0, -1.0, 0.0, 1.0), 0.0);
        assert!(char_eq_residual(&ls, 0.6).unwrap().abs() < 1e-15);
        assert!(matches!(char_eq_residual(&ls, 1.5), Err(Error::DomainError { .. })));
    }

    #[test]
    fn bands_satisfy_characteristic_equation_inside_gap() {
        let couplings = [
            Coupling::reduced(1.0, 0.3, -0.4, 1.0),
            Coupling::reduced(-2.5, 0.7, 1.1, -0.8),
            Coupling::reduced(0.4, -1.5, 0.2, 1.3),
            Coupling::reduced(3.0, 0.5, 2.0, 0.7),
        ];
        for c in couplings {
            for band in bands(&c).unwrap() {
                for i in 0..200 {
                    let k = -6.0 + 12.0 * i as f64 / 199.0;
                    if let Some(z) = band.value(k) {
                        let ctx = FiberContext::new(c, k);
                        assert!(z.abs() < ctx.gap_edge(), "{c:?} k={k} z={z}");
                        assert!(char_eq_residual(&ctx, z).unwrap().abs() < 1e-10);
                    }
                }
            }
        }
    }
}
