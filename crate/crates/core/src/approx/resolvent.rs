//! Resolvent of the regularized fiber operator at a non-real `z` and a
//! probe-based estimate of its distance to the δ-model resolvent.
//!
//! For `(H[k] + A·h_ε − z)ψ = f` the equation is `ψ' = K(x)ψ + g` with
//! `K = B0(z) − iσ1A·h_ε` and `g = iσ1 f`. With `u_L`, `u_R` the solutions
//! decaying at `−∞`, `+∞` and `W = det[u_L, u_R]` (constant, `tr K = 0`),
//! `ψ = u_L α + u_R β` where
//! `α(x) = −∫_x^∞ det[g, u_R]/W` and `β(x) = ∫_{−∞}^x det[u_L, g]/W`.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{free_generator, RegularizedModel};
use super::renormalize::renormalize;
use crate::coupling::Coupling;
use crate::fiber::{krein_resolvent_apply, FiberContext, SampledSpinor};
use crate::mat2::{det_columns, spinor_add, spinor_norm_sqr, spinor_scale, spinor_sub, Mat2, Spinor, SIGMA1};
use crate::quad::{gauss_legendre, simpson_weights};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Gauss–Legendre nodes per smooth piece of a grid cell.
const CELL_NODES: usize = 6;

/// Eigenvector of the traceless `k` for eigenvalue `nu`, from whichever of
/// the two standard forms has the larger norm.
fn eigenvector(k: &Mat2, nu: Complex64) -> Spinor {
    let (a, b, c) = (k.get(0, 0), k.get(0, 1), k.get(1, 0));
    let v1 = [b, nu - a];
    let v2 = [nu + a, c];
    if spinor_norm_sqr(v1) >= spinor_norm_sqr(v2) {
        v1
    } else {
        v2
    }
}

/// The decaying solutions `u_L`, `u_R` in closed form on the three regions.
struct Solutions {
    mu: Complex64,
    half: f64,
    left: Spinor,
    right: Spinor,
    inner: Mat2,
    /// `u_L(ε/2) = a_l·L + b_l·R`.
    a_l: Complex64,
    b_l: Complex64,
    /// `u_R(−ε/2) = a_r·L + b_r·R`.
    a_r: Complex64,
    b_r: Complex64,
    wronskian: Complex64,
}

impl Solutions {
    fn new(model: &RegularizedModel, z: Complex64) -> Result<Self> {
        let k0 = free_generator(z, model.k, model.mass);
        let mu = (Complex64::new(model.mass * model.mass + model.k * model.k, 0.0) - z * z).sqrt();
        if !(mu.re > 0.0) {
            return Err(Error::SpectralPoint);
        }
        let left = eigenvector(&k0, mu);
        let right = eigenvector(&k0, -mu);
        let eps = model.epsilon;
        let inner = k0 - SIGMA1 * model.renorm.a_matrix * (I / eps);
        let tl = (inner * eps).exp_closed().apply(left);
        let tr = (inner * -eps).exp_closed().apply(right);
        let lr = det_columns(left, right);
        let wronskian = det_columns(left, tr);
        Ok(Solutions {
            mu,
            half: 0.5 * eps,
            left,
            right,
            inner,
            a_l: det_columns(tl, right) / lr,
            b_l: det_columns(left, tl) / lr,
            a_r: det_columns(tr, right) / lr,
            b_r: det_columns(left, tr) / lr,
            wronskian,
        })
    }

    fn u_left(&self, x: f64) -> Spinor {
        let h = self.half;
        if x <= -h {
            spinor_scale(self.left, (self.mu * (x + h)).exp())
        } else if x < h {
            (self.inner * (x + h)).exp_closed().apply(self.left)
        } else {
            let s = x - h;
            spinor_add(
                spinor_scale(self.left, self.a_l * (self.mu * s).exp()),
                spinor_scale(self.right, self.b_l * (-self.mu * s).exp()),
            )
        }
    }

    fn u_right(&self, x: f64) -> Spinor {
        let h = self.half;
        if x >= h {
            spinor_scale(self.right, (-self.mu * (x - h)).exp())
        } else if x > -h {
            (self.inner * (x - h)).exp_closed().apply(self.right)
        } else {
            let s = x + h;
            spinor_add(
                spinor_scale(self.left, self.a_r * (self.mu * s).exp()),
                spinor_scale(self.right, self.b_r * (-self.mu * s).exp()),
            )
        }
    }
}

struct QuadPoint {
    y: f64,
    w: f64,
    u_left: Spinor,
    u_right: Spinor,
}

/// `(H[k] + A·h_ε − z)⁻¹` on a uniform grid, with the decaying solutions
/// precomputed so that many inputs can be applied cheaply.
pub struct EpsilonResolvent {
    x0: f64,
    h: f64,
    n: usize,
    w_inv: Complex64,
    node_left: Vec<Spinor>,
    node_right: Vec<Spinor>,
    /// Quadrature points of cell `j` are `quad[cell_start[j]..cell_start[j + 1]]`.
    cell_start: Vec<usize>,
    quad: Vec<QuadPoint>,
}

impl EpsilonResolvent {
    /// Grid `x_j = x0 + j·h`, `j < n`.
    pub fn new(model: &RegularizedModel, z: Complex64, x0: f64, h: f64, n: usize) -> Result<Self> {
        if z.im == 0.0 {
            return Err(Error::InvalidInput("the regularized resolvent needs a non-real spectral parameter"));
        }
        if n < 2 || !(h > 0.0) {
            return Err(Error::InvalidInput("grid needs at least 2 points and a positive step"));
        }
        let sol = Solutions::new(model, z)?;
        let (gx, gw) = gauss_legendre(CELL_NODES);
        let x = |j: usize| x0 + j as f64 * h;
        let node_left = (0..n).map(|j| sol.u_left(x(j))).collect();
        let node_right = (0..n).map(|j| sol.u_right(x(j))).collect();
        let mut cell_start = Vec::with_capacity(n);
        let mut quad = Vec::with_capacity((n - 1) * CELL_NODES);
        for j in 0..n - 1 {
            cell_start.push(quad.len());
            let (a, b) = (x(j), x(j + 1));
            let mut cuts = [a, b, b, b];
            let mut nc = 1;
            for br in [-sol.half, sol.half] {
                if a < br && br < b {
                    cuts[nc] = br;
                    nc += 1;
                }
            }
            cuts[nc] = b;
            for p in 0..nc {
                let (lo, hi) = (cuts[p], cuts[p + 1]);
                let (mid, rad) = (0.5 * (lo + hi), 0.5 * (hi - lo));
                for (t, w) in gx.iter().zip(&gw) {
                    let y = mid + rad * t;
                    quad.push(QuadPoint { y, w: w * rad, u_left: sol.u_left(y), u_right: sol.u_right(y) });
                }
            }
        }
        cell_start.push(quad.len());
        Ok(EpsilonResolvent {
            x0,
            h,
            n,
            w_inv: Complex64::new(1.0, 0.0) / sol.wronskian,
            node_left,
            node_right,
            cell_start,
            quad,
        })
    }

    /// Applies the resolvent to `f` (taken as zero outside the grid).
    pub fn apply<F: Fn(f64) -> Spinor>(&self, f: F) -> SampledSpinor {
        let n = self.n;
        let zero = [Complex64::new(0.0, 0.0); 2];
        let mut cell_alpha = Vec::with_capacity(n - 1);
        let mut cell_beta = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            let mut sa = Complex64::new(0.0, 0.0);
            let mut sb = Complex64::new(0.0, 0.0);
            for q in &self.quad[self.cell_start[j]..self.cell_start[j + 1]] {
                let g = (SIGMA1 * I).apply(f(q.y));
                sa += det_columns(g, q.u_right) * q.w;
                sb += det_columns(q.u_left, g) * q.w;
            }
            cell_alpha.push(sa * self.w_inv);
            cell_beta.push(sb * self.w_inv);
        }
        let mut alpha = alloc::vec![Complex64::new(0.0, 0.0); n];
        for j in (0..n - 1).rev() {
            alpha[j] = alpha[j + 1] - cell_alpha[j];
        }
        let mut values = alloc::vec![zero; n];
        let mut beta = Complex64::new(0.0, 0.0);
        for j in 0..n {
            if j > 0 {
                beta += cell_beta[j - 1];
            }
            values[j] = spinor_add(
                spinor_scale(self.node_left[j], alpha[j]),
                spinor_scale(self.node_right[j], beta),
            );
        }
        SampledSpinor { x0: self.x0, h: self.h, values }
    }
}

/// Spinor-valued Gaussian `c·exp(−(x − center)²/2w²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProbe {
    pub center: f64,
    pub width: f64,
    pub coeffs: Spinor,
}

impl GaussianProbe {
    pub fn eval(&self, x: f64) -> Spinor {
        let u = (x - self.center) / self.width;
        spinor_scale(self.coeffs, Complex64::new((-0.5 * u * u).exp(), 0.0))
    }

    /// Seeded random probes with centers in `[−3, 3]`, widths in
    /// `[0.3, 2]` and coefficients in the unit square.
    pub fn random_set(count: usize, seed: u64) -> Vec<GaussianProbe> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let coeffs = [c(), c()];
            out.push(GaussianProbe { center: 0.0, width: 0.0, coeffs });
        }
        for p in out.iter_mut() {
            p.center = rng.gen_range(-3.0..3.0);
            p.width = rng.gen_range(0.3..2.0);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormCheckOptions {
    pub probes: usize,
    pub half_width: f64,
    pub step: f64,
    pub seed: u64,
    /// Relative slack on the bound.
    pub tolerance: f64,
    pub branch_l: i32,
}

impl Default for NormCheckOptions {
    fn default() -> Self {
        NormCheckOptions {
            probes: 32,
            half_width: 20.0,
            step: 1e-3,
            seed: 0x5eed,
            tolerance: 0.1,
            branch_l: 0,
        }
    }
}

/// Result of [`resolvent_norm_bound_check`]. The estimates are maxima over
/// a finite probe set, hence lower bounds for the operator norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormCheckReport {
    /// Estimate of `‖(H[k]^ε − i)⁻¹ − (H[k]_δ − i)⁻¹‖`.
    pub estimate_k: f64,
    /// The same at `k = 0`.
    pub estimate_zero: f64,
    /// `estimate_k / estimate_zero`.
    pub ratio: f64,
    /// `(1 + |k|)²·(1 + tolerance)`.
    pub bound: f64,
    pub passed: bool,
}

/// `max_f ‖(R_ε − R_δ)f‖ / ‖f‖` over the probe set, at `z = i`.
pub fn resolvent_difference_estimate(c: &Coupling, k: f64, eps: f64, opts: &NormCheckOptions) -> Result<f64> {
    let model = RegularizedModel::new(renormalize(c, opts.branch_l)?, k, eps)?;
    let z = I;
    let ctx = FiberContext::new(*c, k);
    let probes = GaussianProbe::random_set(opts.probes, opts.seed);
    let mut eps_solver: Option<EpsilonResolvent> = None;
    let mut best: f64 = 0.0;
    for p in &probes {
        let f = SampledSpinor::from_fn(opts.half_width, opts.step, |x| p.eval(x));
        let solver = match &eps_solver {
            Some(s) => s,
            None => eps_solver.insert(EpsilonResolvent::new(&model, z, f.x0, f.h, f.len())?),
        };
        let delta = krein_resolvent_apply(&ctx, z, &f)?;
        let reg = solver.apply(|x| p.eval(x));
        let j0 = f.zero_index().ok_or(Error::InvalidInput("grid must contain x = 0"))?;
        let n = f.len();
        let wl = simpson_weights(j0 + 1, f.h);
        let wr = simpson_weights(n - j0, f.h);
        let mut diff = 0.0;
        for (j, w) in wl.iter().enumerate() {
            let d = if j == j0 { delta.trace_minus } else { delta.values.values[j] };
            diff += w * spinor_norm_sqr(spinor_sub(reg.values[j], d));
        }
        for (i, w) in wr.iter().enumerate() {
            let j = j0 + i;
            let d = if j == j0 { delta.trace_plus } else { delta.values.values[j] };
            diff += w * spinor_norm_sqr(spinor_sub(reg.values[j], d));
        }
        let w_all = simpson_weights(n, f.h);
        let norm: f64 = f.values.iter().zip(&w_all).map(|(v, w)| w * spinor_norm_sqr(*v)).sum();
        best = best.max((diff / norm).sqrt());
    }
    Ok(best)
}

/// Compares the probe estimate of the resolvent difference at `k` with the
/// one at `k = 0` against the factor `(1 + |k|)²`.
pub fn resolvent_norm_bound_check(c: &Coupling, k: f64, eps: f64) -> Result<NormCheckReport> {
    resolvent_norm_bound_check_with(c, k, eps, &NormCheckOptions::default())
}

pub fn resolvent_norm_bound_check_with(c: &Coupling, k: f64, eps: f64, opts: &NormCheckOptions) -> Result<NormCheckReport> {
    let estimate_k = resolvent_difference_estimate(c, k, eps, opts)?;
    let estimate_zero = if k == 0.0 {
        estimate_k
    } else {
        resolvent_difference_estimate(c, 0.0, eps, opts)?
    };
    let ratio = estimate_k / estimate_zero;
    let bound = (1.0 + k.abs()).powi(2) * (1.0 + opts.tolerance);
    Ok(NormCheckReport { estimate_k, estimate_zero, ratio, bound, passed: ratio <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::RenormalizedCoupling;

    fn model(c: &Coupling, k: f64, eps: f64) -> RegularizedModel {
        RegularizedModel::new(renormalize(c, 0).unwrap(), k, eps).unwrap()
    }

    /// Residual of `(H + A h_ε − z)ψ = f` at grid points away from the
    /// support of the potential, by five-point differences.
    fn residual(m: &RegularizedModel, z: Complex64, psi: &SampledSpinor, f: &dyn Fn(f64) -> Spinor) -> f64 {
        let h = psi.h;
        let v = &psi.values;
        let mut worst: f64 = 0.0;
        for j in 2..v.len() - 2 {
            let x = psi.x(j);
            if (x.abs() - 0.5 * m.epsilon).abs() < 3.0 * h {
                continue;
            }
            let pot = if x.abs() < 0.5 * m.epsilon { m.renorm.a_matrix * (1.0 / m.epsilon) } else { Mat2::ZERO };
            let mut d = [Complex64::new(0.0, 0.0); 2];
            for c in 0..2 {
                d[c] = (v[j - 2][c] - v[j - 1][c] * 8.0 + v[j + 1][c] * 8.0 - v[j + 2][c]) / (12.0 * h);
            }
            let p = v[j];
            let fx = f(x);
            let vp = pot.apply(p);
            let r1 = p[0] * (m.mass - z) - I * (d[1] + p[1] * m.k) + vp[0] - fx[0];
            let r2 = -I * (d[0] - p[0] * m.k) - p[1] * (m.mass + z) + vp[1] - fx[1];
            worst = worst.max(r1.norm()).max(r2.norm());
        }
        worst
    }

    #[test]
    fn solves_the_equation() {
        let c = Coupling::reduced(1.0, 0.3, -0.4, 1.0);
        let m = model(&c, 0.7, 0.2);
        let z = Complex64::new(0.3, 1.0);
        let probe = GaussianProbe { center: 0.4, width: 0.8, coeffs: [Complex64::new(1.0, 0.5), Complex64::new(-0.3, 0.2)] };
        let f = SampledSpinor::from_fn(12.0, 2e-3, |x| probe.eval(x));
        let r = EpsilonResolvent::new(&m, z, f.x0, f.h, f.len()).unwrap();
        let psi = r.apply(|x| probe.eval(x));
        assert!(residual(&m, z, &psi, &|x| probe.eval(x)) < 1e-6);
    }

    #[test]
    fn zero_potential_matches_free_resolvent() {
        let c = Coupling::reduced(0.0, 0.0, 0.0, 1.0);
        let m = RegularizedModel::new(RenormalizedCoupling::unrenormalized(&c), -0.5, 0.1).unwrap();
        let probe = GaussianProbe { center: -0.2, width: 0.5, coeffs: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] };
        let f = SampledSpinor::from_fn(15.0, 1e-3, |x| probe.eval(x));
        let r = EpsilonResolvent::new(&m, I, f.x0, f.h, f.len()).unwrap();
        let psi = r.apply(|x| probe.eval(x));
        let free = krein_resolvent_apply(&FiberContext::new(c, -0.5), I, &f).unwrap();
        let err = psi
            .values
            .iter()
            .zip(&free.values.values)
            .fold(0.0f64, |acc, (a, b)| acc.max(spinor_norm_sqr(spinor_sub(*a, *b)).sqrt()));
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn k_zero_ratio_is_one() {
        let opts = NormCheckOptions { probes: 4, step: 2e-3, ..Default::default() };
        let r = resolvent_norm_bound_check_with(&Coupling::reduced(1.0, 0.0, 0.0, 1.0), 0.0, 0.1, &opts).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert!(r.passed);
    }
}
