//! Float formatting and the CSV / JSON encodings of solver results.

use diracline_core::approx::SweepReport;
use diracline_core::fiber::{Band, BranchId};
use diracline_core::spectrum::{Interval, SpectrumDescription};
use serde_json::{json, Value};

use crate::CliError;

/// Shortest representation that parses back to the same `f64`. Plain
/// notation for moderate magnitudes, exponent notation otherwise.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// JSON number, or the strings `"inf"` / `"-inf"`.
pub fn json_f64(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt_f64(x))
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Sampled values of the bands at each `k`: `(plus, minus)`, where `plus`
/// also holds the single root of the `d = 4` case.
pub fn band_samples(bands: &[Band], ks: &[f64]) -> Vec<(f64, Option<f64>, Option<f64>)> {
    ks.iter()
        .map(|&k| {
            let pick = |want: &dyn Fn(BranchId) -> bool| {
                bands.iter().filter(|b| want(b.branch_id)).find_map(|b| b.value(k))
            };
            let plus = pick(&|id| matches!(id, BranchId::Plus | BranchId::SingleD4));
            let minus = pick(&|id| id == BranchId::Minus);
            (k, plus, minus)
        })
        .collect()
}

pub const BANDS_HEADER: [&str; 5] = ["k", "z_plus", "z_minus", "plus_admissible", "minus_admissible"];

pub fn bands_csv(bands: &[Band], ks: &[f64]) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(BANDS_HEADER).map_err(|e| CliError::Io(e.to_string()))?;
    let cell = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for (k, p, m) in band_samples(bands, ks) {
        let rec = [fmt_f64(k), cell(p), cell(m), p.is_some().to_string(), m.is_some().to_string()];
        w.write_record(&rec).map_err(|e| CliError::Io(e.to_string()))?;
    }
    finish(w)
}

fn interval_json(iv: &Interval) -> Value {
    json!([json_f64(iv.lo), json_f64(iv.hi), iv.lo_closed, iv.hi_closed])
}

pub fn spectrum_json(s: &SpectrumDescription) -> Value {
    json!({
        "ac": s.ac.intervals().iter().map(interval_json).collect::<Vec<_>>(),
        "pp": s.pp.iter().map(|p| json!({
            "value": p.value,
            "embedded": p.embedded,
            "multiplicity": "infinite",
        })).collect::<Vec<_>>(),
        "sc": s.sc.intervals().iter().map(interval_json).collect::<Vec<_>>(),
        "case": s.case_tag.as_str(),
    })
}

pub const SWEEP_HEADER: [&str; 4] = ["epsilon", "energy", "target", "abs_error"];

pub fn sweep_csv(r: &SweepReport) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(SWEEP_HEADER).map_err(|e| CliError::Io(e.to_string()))?;
    for row in &r.rows {
        let rec = [
            fmt_f64(row.epsilon),
            row.energy.map(fmt_f64).unwrap_or_default(),
            fmt_f64(row.target),
            fmt_f64(row.abs_error),
        ];
        w.write_record(&rec).map_err(|e| CliError::Io(e.to_string()))?;
    }
    finish(w)
}

pub fn sweep_json(r: &SweepReport) -> Value {
    let c = r.coupling;
    json!({
        "coupling": {"eta": c.eta, "tau": c.tau, "lambda": c.lambda, "omega": c.omega, "mass": c.mass},
        "k": r.k,
        "branch": r.branch_l,
        "renormalized": r.renormalized,
        "monotone": r.monotone,
        "final_error": json_f64(r.final_error),
        "rows": r.rows.iter().map(|row| json!({
            "epsilon": row.epsilon,
            "energy": row.energy,
            "target": row.target,
            "abs_error": json_f64(row.abs_error),
        })).collect::<Vec<_>>(),
    })
}

pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r.iter().map(|v| fmt_f64(*v))).map_err(|e| CliError::Io(e.to_string()))?;
    }
    finish(w)
}
