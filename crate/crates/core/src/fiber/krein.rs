//! Resolvent of the coupled fiber operator on a sampled grid via the Krein
//! formula
//! `(H_M − z)⁻¹f = (H − z)⁻¹f − G_z(·)(σ0 + M C_z)⁻¹ M u(0)`,
//! where `u = (H − z)⁻¹f` and `u(0) = ∫ G_z(−y) f(y) dy`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{green_kernel, transmission_matrix, FiberContext, GreenKernel};
use crate::mat2::{spinor_add, spinor_scale, spinor_sub, Mat2, Spinor, SIGMA0, SIGMA1};
use crate::quad::simpson_weights;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO2: Spinor = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];

/// Spinor-valued samples on the uniform grid `x_j = x0 + j·h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSpinor {
    pub x0: f64,
    pub h: f64,
    pub values: Vec<Spinor>,
}

impl SampledSpinor {
    /// Samples `f` on `[−L, L]` with step `h`; `L` is rounded to a multiple
    /// of `h` so that `x = 0` is a grid point.
    pub fn from_fn<F: FnMut(f64) -> Spinor>(half_width: f64, h: f64, mut f: F) -> Self {
        let n_half = (half_width / h).round().max(1.0) as usize;
        let x0 = -(n_half as f64) * h;
        let values = (0..=2 * n_half).map(|j| f(x0 + j as f64 * h)).collect();
        SampledSpinor { x0, h, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.h
    }

    /// Index of the grid point at `x = 0`, if there is one.
    pub fn zero_index(&self) -> Option<usize> {
        let j = (-self.x0 / self.h).round();
        if j < 0.0 || j as usize >= self.values.len() {
            return None;
        }
        let j = j as usize;
        (self.x(j).abs() <= 1e-9 * self.h).then_some(j)
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0, |acc, v| acc.max(v[0].norm()).max(v[1].norm()))
    }
}

/// Grid parameters for sampling inputs of the Krein solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KreinOptions {
    /// Truncation `L` of the real line to `[−L, L]`; `None` picks `20 / Im ξ`.
    pub half_width: Option<f64>,
    pub step: f64,
}

impl Default for KreinOptions {
    fn default() -> Self {
        KreinOptions { half_width: None, step: 1e-3 }
    }
}

impl KreinOptions {
    pub fn resolved_half_width(&self, g: &GreenKernel) -> f64 {
        self.half_width.unwrap_or(20.0 / g.decay_rate())
    }
}

/// Output of [`krein_resolvent_apply`]. The grid value at `x = 0` is the mean
/// of the two one-sided traces.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinOutput {
    pub values: SampledSpinor,
    /// `ψ(0−)`.
    pub trace_minus: Spinor,
    /// `ψ(0+)`.
    pub trace_plus: Spinor,
    /// Free resolvent at the origin, `u(0)`.
    pub free_at_zero: Spinor,
}

impl KreinOutput {
    /// `∫ conj(g)·ψ`, integrating each half-line separately so the jump at
    /// `x = 0` costs no accuracy.
    pub fn pair_left(&self, g: &SampledSpinor) -> Complex64 {
        self.split_integral(|j, psi| dot(g.values[j], psi))
    }

    /// `∫ conj(ψ)·f`.
    pub fn pair_right(&self, f: &SampledSpinor) -> Complex64 {
        self.split_integral(|j, psi| dot(psi, f.values[j]))
    }

    fn split_integral<F: Fn(usize, Spinor) -> Complex64>(&self, term: F) -> Complex64 {
        let v = &self.values;
        let j0 = v.zero_index().expect("grid contains 0");
        let n = v.len();
        let wl = simpson_weights(j0 + 1, v.h);
        let wr = simpson_weights(n - j0, v.h);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, w) in wl.iter().enumerate() {
            let psi = if j == j0 { self.trace_minus } else { v.values[j] };
            acc += term(j, psi) * *w;
        }
        for (i, w) in wr.iter().enumerate() {
            let j = j0 + i;
            let psi = if j == j0 { self.trace_plus } else { v.values[j] };
            acc += term(j, psi) * *w;
        }
        acc
    }
}

fn dot(a: Spinor, b: Spinor) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn check_input(z: Complex64, f: &SampledSpinor) -> Result<usize> {
    if z.im == 0.0 || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::InvalidInput("the Krein formula needs a non-real spectral parameter"));
    }
    if f.len() < 5 || !(f.h > 0.0) {
        return Err(Error::InvalidInput("grid needs at least 5 points and a positive step"));
    }
    f.zero_index()
        .ok_or(Error::InvalidInput("grid must contain x = 0"))
}

/// `u = (H[k] − z)⁻¹ f` on the grid of `f` (with `f` taken as zero outside).
///
/// Splitting `G_z(x − y)` by the sign of `x − y` gives
/// `u = (i/2ξ)[Q(F₊ + F₋) + ξσ1(F₊ − F₋)]` with
/// `F₊(x) = ∫_{y<x} e^{iξ(x−y)} f(y) dy` and `F₋(x) = ∫_{y>x} e^{iξ(y−x)} f(y) dy`.
/// Both are accumulated in one pass each, panel by panel, with the
/// three-point rule `h/12 (5φ_j + 8φ_{j+1} − φ_{j+2})`.
pub fn free_resolvent_apply(ctx: &FiberContext, z: Complex64, f: &SampledSpinor) -> Result<SampledSpinor> {
    check_input(z, f)?;
    let g = green_kernel(ctx, z)?;
    Ok(free_resolvent_on_grid(&g, f))
}

fn free_resolvent_on_grid(g: &GreenKernel, f: &SampledSpinor) -> SampledSpinor {
    let n = f.len();
    let h = f.h;
    let xi = g.xi;
    let e = (I * xi * h).exp();
    let e2 = e * e;
    let fv = &f.values;
    let w = h / 12.0;
    let lin = |a: Spinor, ca: Complex64, b: Spinor, cb: Complex64, c: Spinor, cc: Complex64| -> Spinor {
        [
            (a[0] * ca + b[0] * cb + c[0] * cc) * w,
            (a[1] * ca + b[1] * cb + c[1] * cc) * w,
        ]
    };
    let one = Complex64::new(1.0, 0.0);

    let mut fp = alloc::vec![ZERO2; n];
    for j in 0..n - 1 {
        // panel [x_j, x_{j+1}] with weight e^{iξ(x_{j+1} − y)}
        let local = if j + 2 < n {
            lin(fv[j], e * 5.0, fv[j + 1], one * 8.0, fv[j + 2], -one / e)
        } else {
            lin(fv[j - 1], -e2, fv[j], e * 8.0, fv[j + 1], one * 5.0)
        };
        fp[j + 1] = spinor_add(spinor_scale(fp[j], e), local);
    }
    let mut fm = alloc::vec![ZERO2; n];
    for j in (0..n - 1).rev() {
        // panel [x_j, x_{j+1}] with weight e^{iξ(y − x_j)}
        let local = if j + 2 < n {
            lin(fv[j], one * 5.0, fv[j + 1], e * 8.0, fv[j + 2], -e2)
        } else {
            lin(fv[j - 1], -one / e, fv[j], one * 8.0, fv[j + 1], e * 5.0)
        };
        fm[j] = spinor_add(spinor_scale(fm[j + 1], e), local);
    }

    let q = g.q_matrix();
    let pref = I / (xi * 2.0);
    let values = (0..n)
        .map(|j| combine(&q, xi, pref, fp[j], fm[j]))
        .collect();
    SampledSpinor { x0: f.x0, h, values }
}

fn combine(q: &Mat2, xi: Complex64, pref: Complex64, fp: Spinor, fm: Spinor) -> Spinor {
    let a = q.apply(spinor_add(fp, fm));
    let b = (SIGMA1 * xi).apply(spinor_sub(fp, fm));
    spinor_scale(spinor_add(a, b), pref)
}

/// `u(0)` by composite Simpson on each half-line.
fn free_at_zero(g: &GreenKernel, f: &SampledSpinor, j0: usize) -> Spinor {
    let n = f.len();
    let wl = simpson_weights(j0 + 1, f.h);
    let wr = simpson_weights(n - j0, f.h);
    let mut fp = ZERO2;
    for (j, w) in wl.iter().enumerate() {
        // e^{iξ(0 − y)}, y ≤ 0
        let c = (I * g.xi * (-f.x(j))).exp() * *w;
        fp = spinor_add(fp, spinor_scale(f.values[j], c));
    }
    let mut fm = ZERO2;
    for (i, w) in wr.iter().enumerate() {
        let j = j0 + i;
        let c = (I * g.xi * f.x(j)).exp() * *w;
        fm = spinor_add(fm, spinor_scale(f.values[j], c));
    }
    combine(&g.q_matrix(), g.xi, I / (g.xi * 2.0), fp, fm)
}

/// Applies the resolvent of the coupled fiber operator to sampled `f`.
pub fn krein_resolvent_apply(ctx: &FiberContext, z: Complex64, f: &SampledSpinor) -> Result<KreinOutput> {
    let j0 = check_input(z, f)?;
    let g = green_kernel(ctx, z)?;
    let m = ctx.coupling.interaction_matrix();
    let u = free_resolvent_on_grid(&g, f);
    let u0 = free_at_zero(&g, f, j0);
    let weight = ((SIGMA0 + m * g.c_matrix).inverse()? * m).apply(u0);

    let mut values = u.values;
    for (j, v) in values.iter_mut().enumerate() {
        if j != j0 {
            *v = spinor_sub(*v, g.eval(f.x(j)).apply(weight));
        }
    }
    let trace_minus = spinor_sub(u0, g.at_zero(-1.0).apply(weight));
    let trace_plus = spinor_sub(u0, g.at_zero(1.0).apply(weight));
    values[j0] = spinor_scale(spinor_add(trace_minus, trace_plus), Complex64::new(0.5, 0.0));
    Ok(KreinOutput {
        values: SampledSpinor { x0: f.x0, h: f.h, values },
        trace_minus,
        trace_plus,
        free_at_zero: u0,
    })
}

/// Checks a resolvent output `ψ` against its defining properties.
/// Returns `(bulk, transmission)`:
/// * `bulk`: max over grid points at least three steps away from `0` and
///   from the ends of `|(H[k] − z)ψ − f|`, with `ψ'` from the five-point
///   central difference;
/// * `transmission`: `max |ψ(0+) − Λψ(0−)|`.
pub fn krein_residual(ctx: &FiberContext, z: Complex64, f: &SampledSpinor, out: &KreinOutput) -> Result<(f64, f64)> {
    let j0 = check_input(z, f)?;
    let psi = &out.values.values;
    let n = psi.len();
    let h = f.h;
    let (m, k) = (ctx.mass(), ctx.k);
    let mut bulk: f64 = 0.0;
    for j in 2..n.saturating_sub(2) {
        if j + 2 >= j0 && j <= j0 + 2 {
            continue;
        }
        let mut d = ZERO2;
        for c in 0..2 {
            d[c] = (psi[j - 2][c] - psi[j - 1][c] * 8.0 + psi[j + 1][c] * 8.0 - psi[j + 2][c]) / (12.0 * h);
        }
        let p = psi[j];
        let r1 = p[0] * (m - z) - I * (d[1] + p[1] * k) - f.values[j][0];
        let r2 = -I * (d[0] - p[0] * k) - p[1] * (m + z) - f.values[j][1];
        bulk = bulk.max(r1.norm()).max(r2.norm());
    }
    let lambda = transmission_matrix(&ctx.coupling)?.lambda_matrix;
    let t = spinor_sub(out.trace_plus, lambda.apply(out.trace_minus));
    Ok((bulk, t[0].norm().max(t[1].norm())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::Coupling;

    fn gaussian(center: f64, width: f64, a: Complex64, b: Complex64) -> impl Fn(f64) -> Spinor {
        move |x| {
            let g = (-((x - center) / width).powi(2)).exp();
            [a * g, b * g]
        }
    }

    fn input() -> SampledSpinor {
        SampledSpinor::from_fn(
            20.0,
            1e-3,
            gaussian(0.4, 1.1, Complex64::new(1.0, 0.2), Complex64::new(-0.3, 0.5)),
        )
    }

    #[test]
    fn zero_coupling_is_free_resolvent() {
        let ctx = FiberContext::new(Coupling::reduced(0.0, 0.0, 0.0, 1.0), 0.5);
        let f = input();
        let out = krein_resolvent_apply(&ctx, I, &f).unwrap();
        let free = free_resolvent_apply(&ctx, I, &f).unwrap();
        let j0 = f.zero_index().unwrap();
        for j in (0..f.len()).step_by(997) {
            if j == j0 {
                continue;
            }
            let d = spinor_sub(out.values.values[j], free.values[j]);
            assert!(d[0].norm().max(d[1].norm()) < 1e-15);
        }
        let d = spinor_sub(out.values.values[j0], free.values[j0]);
        assert!(d[0].norm().max(d[1].norm()) < 1e-9);
    }

    #[test]
    fn resolvent_equation_and_transmission() {
        for c in [
            Coupling::reduced(1.0, 0.0, 0.0, 1.0),
            Coupling::reduced(0.3, -1.1, 0.8, 0.5),
            Coupling::new(-0.7, 0.4, 0.2, 1.5, 1.0),
        ] {
            let ctx = FiberContext::new(c, -0.8);
            let f = input();
            let out = krein_resolvent_apply(&ctx, I, &f).unwrap();
            let (bulk, trans) = krein_residual(&ctx, I, &f, &out).unwrap();
            assert!(bulk < 1e-6, "{c:?}: bulk residual {bulk:e}");
            assert!(trans < 1e-8, "{c:?}: transmission residual {trans:e}");
        }
    }

    #[test]
    fn adjoint_identity() {
        let ctx = FiberContext::new(Coupling::reduced(0.9, 0.3, -0.5, 1.0), 0.7);
        let z = Complex64::new(0.2, 0.8);
        let f = input();
        let g = SampledSpinor::from_fn(
            20.0,
            1e-3,
            gaussian(-0.9, 0.7, Complex64::new(0.1, -1.0), Complex64::new(0.8, 0.0)),
        );
        let rf = krein_resolvent_apply(&ctx, z, &f).unwrap();
        let rg = krein_resolvent_apply(&ctx, z.conj(), &g).unwrap();
        let lhs = rf.pair_left(&g);
        let rhs = rg.pair_right(&f);
        assert!((lhs - rhs).norm() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn rejects_real_z_and_bad_grid() {
        let ctx = FiberContext::new(Coupling::reduced(1.0, 0.0, 0.0, 1.0), 0.0);
        let f = input();
        assert!(matches!(
            krein_resolvent_apply(&ctx, Complex64::new(0.1, 0.0), &f),
            Err(Error::InvalidInput(_))
        ));
        let shifted = SampledSpinor { x0: f.x0 + 0.5e-3, ..f };
        assert!(matches!(krein_resolvent_apply(&ctx, I, &shifted), Err(Error::InvalidInput(_))));
    }
}
