use alloc::vec::Vec;

use super::intervals::{Interval, IntervalSet, MERGE_TOL};
use crate::coupling::Coupling;
use crate::fiber::{bands, Band, OpenInterval};
use crate::roots::{bisect, linspace};
use crate::{Error, Result};

/// Which case of the classification of the full spectrum applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `d = 4`, `λ ≠ 0`: a single non-constant linear band, `σ_ac = ℝ`.
    ThmI,
    /// `d = 4`, `λ = 0`: a flat band, one eigenvalue of infinite multiplicity.
    ThmII,
    /// `d ≠ 4`.
    ThmIII,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::ThmI => "thm_i",
            CaseTag::ThmII => "thm_ii",
            CaseTag::ThmIII => "thm_iii",
        }
    }
}

/// An eigenvalue of the full operator. Always of infinite multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEigenvalue {
    pub value: f64,
    /// Lies in the closure of the absolutely continuous spectrum.
    pub embedded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDescription {
    pub ac: IntervalSet,
    /// At most one entry.
    pub pp: Vec<PointEigenvalue>,
    /// Always empty.
    pub sc: IntervalSet,
    pub case_tag: CaseTag,
}

impl SpectrumDescription {
    pub(crate) fn new(ac: IntervalSet, pp_values: &[f64], case_tag: CaseTag) -> Self {
        let pp = pp_values
            .iter()
            .map(|&value| PointEigenvalue {
                value,
                embedded: ac.closure_contains(value, MERGE_TOL),
            })
            .collect();
        SpectrumDescription { ac, pp, sc: IntervalSet::empty(), case_tag }
    }

    /// `ac ∪ pp` as a set of intervals (eigenvalues as degenerate intervals).
    pub fn full(&self) -> IntervalSet {
        let mut s = self.ac.clone();
        for p in &self.pp {
            s.push(Interval::closed(p.value, p.value));
        }
        s
    }

    /// Same case, `ac` within `tol`, and the same eigenvalues within `tol`.
    pub fn approx_eq(&self, other: &SpectrumDescription, tol: f64) -> bool {
        self.case_tag == other.case_tag
            && self.ac.approx_eq(&other.ac, tol)
            && self.pp.len() == other.pp.len()
            && self
                .pp
                .iter()
                .zip(&other.pp)
                .all(|(a, b)| (a.value - b.value).abs() <= tol && a.embedded == b.embedded)
    }
}

/// Tolerance deciding `λ = 0` in the `d = 4` case, matching the band solver.
const FLAT_TOL: f64 = 1e-12;
/// Samples per domain component when scanning the derivative for critical points.
const CRITICAL_SCAN: usize = 2048;

/// The spectrum of the full operator for `ω = 0`, `d ≠ −4`:
/// `σ_ac` is the free spectrum joined with the closed ranges of all
/// non-constant bands, and each constant band contributes an eigenvalue.
pub fn assemble_spectrum(c: &Coupling) -> Result<SpectrumDescription> {
    let class = c.classify();
    let all = bands(c)?;
    let case_tag = if !class.is_case_d4 {
        CaseTag::ThmIII
    } else if c.lambda.abs() <= FLAT_TOL {
        CaseTag::ThmII
    } else {
        CaseTag::ThmI
    };

    let mut ac = IntervalSet::free(c.mass);
    let mut pp: Vec<f64> = Vec::new();
    for band in &all {
        if band.is_constant {
            let v = band.eval(band.domain[0].interior_point());
            if !pp.iter().any(|p| (p - v).abs() <= MERGE_TOL * v.abs().max(1.0)) {
                pp.push(v);
            }
        } else {
            for iv in &band.domain {
                let (lo, hi) = band_range(band, iv);
                ac.push(Interval::closed(lo, hi));
            }
        }
    }
    Ok(SpectrumDescription::new(ac, &pp, case_tag))
}

/// `(inf, sup)` of a band over one domain component: the extreme of the end
/// values (limits at infinite ends) and the values at critical points.
pub fn band_range(band: &Band, iv: &OpenInterval) -> (f64, f64) {
    let law = &band.law;
    let end = |k: f64, dir: f64| if k.is_finite() { law.eval(k) } else { law.limit(dir) };
    let mut lo = end(iv.lo, -1.0).min(end(iv.hi, 1.0));
    let mut hi = end(iv.lo, -1.0).max(end(iv.hi, 1.0));
    for k in critical_points(band, iv) {
        let v = law.eval(k);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Zeros of `z'(k)` inside the component, located on a grid in the
/// compactified variable `t` and refined by bisection.
fn critical_points(band: &Band, iv: &OpenInterval) -> Vec<f64> {
    if band.is_linear {
        return Vec::new();
    }
    let (to_k, t_lo, t_hi): (fn(f64, &OpenInterval) -> f64, f64, f64) =
        match (iv.lo.is_finite(), iv.hi.is_finite()) {
            (true, true) => (|t, iv| iv.lo + t * (iv.hi - iv.lo), 0.0, 1.0),
            (true, false) => (|t, iv| iv.lo + t / (1.0 - t), 0.0, 1.0),
            (false, true) => (|t, iv| iv.hi - t / (1.0 - t), 0.0, 1.0),
            (false, false) => (|t, _| t / (1.0 - t * t), -1.0, 1.0),
        };
    let grid = linspace(t_lo, t_hi, CRITICAL_SCAN + 2);
    let inner = &grid[1..grid.len() - 1];
    let dz = |t: f64| band.law.derivative(to_k(t, iv));
    let mut out = Vec::new();
    let mut prev = (inner[0], dz(inner[0]));
    for &t in &inner[1..] {
        let v = dz(t);
        if v == 0.0 {
            out.push(to_k(t, iv));
        } else if prev.1 != 0.0 && (v > 0.0) != (prev.1 > 0.0) {
            let r = bisect(dz, prev.0, t, prev.1, v, 1e-15);
            out.push(to_k(r, iv));
        }
        prev = (t, v);
    }
    out
}

/// Point spectrum predicted directly from the coupling constants:
/// `{−τm/η}` for `d = 4`, `λ = 0`; `{0}` for `m = 0`, `d − 4 = ±4λ ≠ 0`.
pub fn predicted_point_spectrum(c: &Coupling) -> Vec<f64> {
    let class = c.classify();
    let mut out = Vec::new();
    if class.is_case_d4 && c.lambda.abs() <= FLAT_TOL {
        out.push(-c.tau * c.mass / c.eta);
    } else if !class.is_case_d4 && c.mass == 0.0 && c.lambda != 0.0 {
        let d4 = c.d() - 4.0;
        let tol = 1e-12 * d4.abs().max(1.0);
        if (d4 - 4.0 * c.lambda).abs() <= tol || (d4 + 4.0 * c.lambda).abs() <= tol {
            out.push(0.0);
        }
    }
    out
}

/// Group velocity `dz/dk` of a linear band.
pub fn group_velocity(band: &Band) -> Result<f64> {
    match (band.is_linear, band.slope) {
        (true, Some(v)) => Ok(v),
        _ => Err(Error::NotLinear),
    }
}
