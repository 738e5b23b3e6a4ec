//! Closed-form spectra and bands of the one-parameter families with a single
//! nonzero coupling constant.

use alloc::vec;
use alloc::vec::Vec;

use super::assemble::{CaseTag, SpectrumDescription};
use super::intervals::{Interval, IntervalSet};
use crate::coupling::Coupling;
use crate::fiber::{Band, BandLaw, BranchId, OpenInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialFamily {
    /// `(η, 0, 0)`.
    Electrostatic,
    /// `(0, τ, 0)`.
    Lorentz,
    /// `(0, 0, λ)`.
    Magnetic,
}

impl SpecialFamily {
    pub fn coupling(self, param: f64, mass: f64) -> Coupling {
        match self {
            SpecialFamily::Electrostatic => Coupling::reduced(param, 0.0, 0.0, mass),
            SpecialFamily::Lorentz => Coupling::reduced(0.0, param, 0.0, mass),
            SpecialFamily::Magnetic => Coupling::reduced(0.0, 0.0, param, mass),
        }
    }

    /// The family a coupling belongs to, if exactly one of `η, τ, λ` is
    /// nonzero and `ω = 0`.
    pub fn of(c: &Coupling) -> Option<(SpecialFamily, f64)> {
        if c.omega != 0.0 {
            return None;
        }
        match (c.eta != 0.0, c.tau != 0.0, c.lambda != 0.0) {
            (true, false, false) => Some((SpecialFamily::Electrostatic, c.eta)),
            (false, true, false) => Some((SpecialFamily::Lorentz, c.tau)),
            (false, false, true) => Some((SpecialFamily::Magnetic, c.lambda)),
            _ => None,
        }
    }
}

/// `|4 − p²| / (4 + p²)`.
fn ratio(p: f64) -> f64 {
    (4.0 - p * p).abs() / (4.0 + p * p)
}

/// Spectrum of the family member with parameter `param` and mass `mass`,
/// straight from the case formulas. Also defined for the confining members
/// `τ = ±2` and `λ = ±2`.
pub fn special_case_table(family: SpecialFamily, param: f64, mass: f64) -> SpectrumDescription {
    let m = mass.abs();
    let neg = |hi: f64| Interval::closed(f64::NEG_INFINITY, hi);
    let pos = |lo: f64| Interval::closed(lo, f64::INFINITY);
    match family {
        SpecialFamily::Electrostatic => {
            let eta = param;
            if eta.abs() == 2.0 {
                return SpectrumDescription::new(IntervalSet::free(m), &[0.0], CaseTag::ThmII);
            }
            let s = (eta * eta - 4.0) / (eta * eta + 4.0) * m;
            let ac = if eta < -2.0 {
                [neg(-s), pos(m)]
            } else if eta < 0.0 {
                [neg(-m), pos(-s)]
            } else if eta < 2.0 {
                [neg(s), pos(m)]
            } else {
                [neg(-m), pos(s)]
            };
            SpectrumDescription::new(IntervalSet::from_intervals(ac), &[], CaseTag::ThmIII)
        }
        SpecialFamily::Lorentz => {
            let ac = if param * mass < 0.0 {
                let r = ratio(param) * m;
                IntervalSet::from_intervals([neg(-r), pos(r)])
            } else {
                IntervalSet::free(m)
            };
            SpectrumDescription::new(ac, &[], CaseTag::ThmIII)
        }
        SpecialFamily::Magnetic => SpectrumDescription::new(IntervalSet::free(m), &[], CaseTag::ThmIII),
    }
}

/// Bands of the family member in the closed forms
/// `±r·sqrt(m² + k²)` (electrostatic), `±sqrt(r²m² + k²)` for `τm < 0`
/// (Lorentz) and `±sqrt(m² + r²k²)` for `λk < 0` (magnetic), with
/// `r = |4 − p²|/(4 + p²)`. Unlike [`crate::fiber::bands`] these formulas
/// remain valid in the confining cases `τ = ±2`, `λ = ±2`.
pub fn special_case_bands(family: SpecialFamily, param: f64, mass: f64) -> Vec<Band> {
    let r = ratio(param);
    let m2 = mass * mass;
    let punctured = || vec![OpenInterval::new(f64::NEG_INFINITY, 0.0), OpenInterval::new(0.0, f64::INFINITY)];
    let whole = || if mass == 0.0 { punctured() } else { vec![OpenInterval::REAL_LINE] };
    let pair = |offset_sq: f64, slope_sq: f64, domain: Vec<OpenInterval>| -> Vec<Band> {
        [(BranchId::Plus, 1.0), (BranchId::Minus, -1.0)]
            .into_iter()
            .map(|(id, sign)| hyperbolic(id, sign, offset_sq, slope_sq, domain.clone()))
            .collect()
    };
    match family {
        SpecialFamily::Electrostatic => {
            if param == 0.0 {
                Vec::new()
            } else if param.abs() == 2.0 {
                vec![Band {
                    branch_id: BranchId::SingleD4,
                    law: BandLaw::Linear { slope: 0.0, intercept: 0.0 },
                    domain: whole(),
                    is_constant: true,
                    is_linear: true,
                    slope: Some(0.0),
                }]
            } else {
                let sign = param.signum() * (param * param - 4.0).signum();
                let id = if sign > 0.0 { BranchId::Plus } else { BranchId::Minus };
                vec![hyperbolic(id, sign, r * r * m2, r * r, whole())]
            }
        }
        SpecialFamily::Lorentz => {
            if param * mass < 0.0 {
                pair(r * r * m2, 1.0, vec![OpenInterval::REAL_LINE])
            } else {
                Vec::new()
            }
        }
        SpecialFamily::Magnetic => {
            if param == 0.0 {
                return Vec::new();
            }
            let half = if param > 0.0 {
                OpenInterval::new(f64::NEG_INFINITY, 0.0)
            } else {
                OpenInterval::new(0.0, f64::INFINITY)
            };
            pair(m2, r * r, vec![half])
        }
    }
}

fn hyperbolic(id: BranchId, sign: f64, offset_sq: f64, slope_sq: f64, domain: Vec<OpenInterval>) -> Band {
    let is_linear = offset_sq == 0.0;
    let is_constant = slope_sq == 0.0;
    Band {
        branch_id: id,
        law: BandLaw::Hyperbolic { sign, offset_sq, slope_sq },
        // A linear hyperbolic band is `±r|k|`; its slope is constant only on
        // a half-line, so it is reported for single half-line domains.
        slope: match (is_linear, domain.as_slice()) {
            (true, [iv]) if iv.lo >= 0.0 => Some(sign * slope_sq.sqrt()),
            (true, [iv]) if iv.hi <= 0.0 => Some(-sign * slope_sq.sqrt()),
            _ if is_constant => Some(0.0),
            _ => None,
        },
        is_linear: is_constant || (is_linear && domain.len() == 1 && !domain[0].contains(0.0)),
        is_constant,
        domain,
    }
}
