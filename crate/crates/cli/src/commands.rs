//! One function per subcommand. Each returns the rendered output; writing it
//! out is left to the caller.

use diracline_core::approx::{
    convergence_sweep, naive_sweep, resolvent_norm_bound_check, SweepReport, DEFAULT_SWEEP_THRESHOLD,
};
use diracline_core::coupling::{reduce_omega, Coupling};
use diracline_core::fiber::{bands, fiber_eigenvalues, matching_oracle, Band, FiberContext};
use diracline_core::mat2::spinor_norm_sqr;
use diracline_core::spectrum::{
    assemble_spectrum, group_velocity, propagate_packet, special_case_bands, special_case_table, GaussianEnvelope,
    SpecialFamily, SpectrumDescription, WavePacket,
};
use diracline_core::Error;
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::output::{bands_csv, csv_table, json_f64, spectrum_json, sweep_csv, sweep_json};
use crate::svg::band_diagram;
use crate::CliError;

/// Rendered output of a command plus an optional validation failure that
/// should be reported after the output is written.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failure: None }
    }
}

/// `ω` is gauged away first; the reduced coupling has the same fiber spectra.
fn reduced(c: &Coupling) -> Coupling {
    reduce_omega(c).reduced
}

/// The confining members of the Lorentz and magnetic families are still
/// covered by their closed forms; everything else at `d = −4` is refused.
fn confining_family(c: &Coupling) -> Option<(SpecialFamily, f64)> {
    SpecialFamily::of(c).filter(|(f, _)| *f != SpecialFamily::Electrostatic)
}

/// Bands and spectrum of the (reduced) coupling.
pub fn bands_and_spectrum(c: &Coupling) -> Result<(Vec<Band>, SpectrumDescription), CliError> {
    let r = reduced(c);
    match (bands(&r), assemble_spectrum(&r)) {
        (Ok(b), Ok(s)) => Ok((b, s)),
        (Err(Error::ConfiningRegime), _) | (_, Err(Error::ConfiningRegime)) => match confining_family(&r) {
            Some((family, p)) => Ok((special_case_bands(family, p, r.mass), special_case_table(family, p, r.mass))),
            None => Err(Error::ConfiningRegime.into()),
        },
        (Err(e), _) | (_, Err(e)) => Err(e.into()),
    }
}

pub fn cmd_bands(cfg: &RunConfig) -> Result<Output, CliError> {
    let (b, s) = bands_and_spectrum(&cfg.coupling)?;
    let ks = cfg.k_grid();
    let text = match cfg.format {
        Format::Svg => band_diagram(&reduced(&cfg.coupling), &b, &s, &ks),
        _ => bands_csv(&b, &ks)?,
    };
    Ok(Output::ok(text))
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let (_, s) = bands_and_spectrum(&cfg.coupling)?;
    Ok(Output::ok(pretty(&spectrum_json(&s))))
}

pub fn cmd_fiber(cfg: &RunConfig) -> Result<Output, CliError> {
    let ctx = FiberContext::new(cfg.coupling, cfg.k);
    let eigenvalues: Vec<f64> = fiber_eigenvalues(&ctx)?.into_iter().map(|(z, _)| z).collect();
    let oracle = matching_oracle(&ctx)?;
    let text = pretty(&json!({ "eigenvalues": eigenvalues, "oracle": oracle }));
    let agree = eigenvalues.len() == oracle.len()
        && eigenvalues.iter().zip(&oracle).all(|(a, b)| (a - b).abs() <= 1e-9 * ctx.gap_edge().max(1.0));
    let failure = (!agree).then(|| "closed-form eigenvalues and matching-determinant roots disagree".to_string());
    Ok(Output { text, failure })
}

fn sweep(cfg: &RunConfig) -> Result<SweepReport, CliError> {
    let c = reduced(&cfg.coupling);
    let r = if cfg.naive {
        naive_sweep(&c, cfg.k, &cfg.eps)?
    } else {
        convergence_sweep(&c, cfg.k, &cfg.eps, cfg.branch)?
    };
    Ok(r)
}

pub fn cmd_approx(cfg: &RunConfig) -> Result<Output, CliError> {
    let r = sweep(cfg)?;
    let text = match cfg.format {
        Format::Json => pretty(&sweep_json(&r)),
        _ => sweep_csv(&r)?,
    };
    let failure = if cfg.naive || cfg.eps.len() < 2 {
        None
    } else {
        r.ensure_converged(DEFAULT_SWEEP_THRESHOLD).err().map(|e| e.to_string())
    };
    Ok(Output { text, failure })
}

pub fn cmd_resolvent_check(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = reduced(&cfg.coupling);
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for &eps in &cfg.eps {
        let r = resolvent_norm_bound_check(&c, cfg.k, eps)?;
        if !r.passed {
            failed.push(eps);
        }
        reports.push(json!({
            "epsilon": eps,
            "k": cfg.k,
            "estimate_k": r.estimate_k,
            "estimate_zero": r.estimate_zero,
            "ratio": json_f64(r.ratio),
            "bound": r.bound,
            "passed": r.passed,
            "note": "maxima over a finite probe set; lower bounds for the operator norms",
        }));
    }
    let failure = (!failed.is_empty()).then(|| format!("ratio above (1+|k|)^2 bound for eps {failed:?}"));
    Ok(Output { text: pretty(&json!(reports)), failure })
}

pub fn cmd_packet(cfg: &RunConfig) -> Result<Output, CliError> {
    let c = reduced(&cfg.coupling);
    let p = &cfg.packet;
    let all = bands(&c)?;
    let band = all
        .get(p.band)
        .cloned()
        .ok_or_else(|| CliError::Config(format!("band index {} out of range ({} bands)", p.band, all.len())))?;
    let velocity = group_velocity(&band).ok();
    let packet = WavePacket::new(c, band, GaussianEnvelope::new(cfg.k, p.sigma_k), p.nodes)?;
    let n = cfg.samples;
    let axis = |half: f64, i: usize| -half + 2.0 * half * i as f64 / (n - 1) as f64;
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = axis(p.xmax, i);
        for j in 0..n {
            let y = axis(p.ymax, j);
            let now = spinor_norm_sqr(propagate_packet(&packet, x, y, p.time)).sqrt();
            let mut row = vec![x, y, now];
            if let Some(v) = velocity {
                row.push(spinor_norm_sqr(propagate_packet(&packet, x, y - v * p.time, 0.0)).sqrt());
            }
            rows.push(row);
        }
    }
    let header: &[&str] = if velocity.is_some() {
        &["x", "y", "abs_psi", "abs_psi_initial_translated"]
    } else {
        &["x", "y", "abs_psi"]
    };
    Ok(Output::ok(csv_table(header, rows)?))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}
