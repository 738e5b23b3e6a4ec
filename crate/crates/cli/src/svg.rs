//! Band diagrams as hand-written SVG 1.1: the bulk region
//! `|z| ≥ sqrt(m² + k²)` in gray, one black path per band, and the spectrum
//! of the full operator as a blue strip on the right.

use std::fmt::Write as _;

use diracline_core::coupling::Coupling;
use diracline_core::fiber::Band;
use diracline_core::spectrum::SpectrumDescription;

use crate::output::fmt_f64;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

/// Namespace of the `<dl:axes>` element in `<metadata>` that records the
/// data-to-pixel map.
pub const AXES_NS: &str = "urn:diracline:axes";

/// Affine map from `(k, z)` to pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axes {
    pub kmin: f64,
    pub kmax: f64,
    pub zmin: f64,
    pub zmax: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

impl Axes {
    pub fn px(&self, k: f64) -> f64 {
        self.left + (k - self.kmin) / (self.kmax - self.kmin) * (self.right - self.left)
    }

    pub fn py(&self, z: f64) -> f64 {
        self.bottom - (z - self.zmin) / (self.zmax - self.zmin) * (self.bottom - self.top)
    }

    pub fn k_of(&self, px: f64) -> f64 {
        self.kmin + (px - self.left) / (self.right - self.left) * (self.kmax - self.kmin)
    }

    pub fn z_of(&self, py: f64) -> f64 {
        self.zmin + (self.bottom - py) / (self.bottom - self.top) * (self.zmax - self.zmin)
    }
}

fn edge(m: f64, k: f64) -> f64 {
    m.hypot(k)
}

/// Symmetric `z` range that shows the gap at every sampled `k` and all band
/// values, rounded up to a half-integer.
fn z_extent(mass: f64, ks: &[f64], bands: &[Band]) -> f64 {
    let mut z = ks.iter().map(|&k| edge(mass, k)).fold(0.5f64, f64::max);
    for b in bands {
        for &k in ks {
            if let Some(v) = b.value(k) {
                z = z.max(v.abs());
            }
        }
    }
    (z * 1.1 * 2.0).ceil() / 2.0
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let step = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
        .into_iter()
        .find(|s| span / s <= 12.0)
        .unwrap_or(100.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn path_data(points: &[Option<(f64, f64)>]) -> String {
    let mut d = String::new();
    let mut pen_down = false;
    for p in points {
        match p {
            Some((x, y)) => {
                let cmd = if pen_down { 'L' } else { 'M' };
                let _ = write!(d, "{}{} {} ", cmd, fmt_f64(*x), fmt_f64(*y));
                pen_down = true;
            }
            None => pen_down = false,
        }
    }
    d.trim_end().to_string()
}

/// Renders the diagram for the sampled momenta `ks`.
pub fn band_diagram(coupling: &Coupling, bands: &[Band], spectrum: &SpectrumDescription, ks: &[f64]) -> String {
    let m = coupling.mass;
    let (kmin, kmax) = (ks[0], ks[ks.len() - 1]);
    let zr = z_extent(m, ks, bands);
    let ax = Axes { kmin, kmax, zmin: -zr, zmax: zr, left: 70.0, right: 690.0, top: 40.0, bottom: 550.0 };
    let (strip_l, strip_r) = (720.0, 750.0);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#,
        W = WIDTH,
        H = HEIGHT
    );
    let _ = writeln!(
        s,
        r#"<metadata><dl:axes xmlns:dl="{AXES_NS}" kmin="{}" kmax="{}" zmin="{}" zmax="{}" left="{}" right="{}" top="{}" bottom="{}"/></metadata>"#,
        fmt_f64(ax.kmin),
        fmt_f64(ax.kmax),
        fmt_f64(ax.zmin),
        fmt_f64(ax.zmax),
        ax.left,
        ax.right,
        ax.top,
        ax.bottom
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot-area"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        ax.left,
        ax.top,
        ax.right - ax.left,
        ax.bottom - ax.top
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">eta = {}, tau = {}, lambda = {}, omega = {}, m = {}</text>"#,
        0.5 * (ax.left + ax.right),
        fmt_f64(coupling.eta),
        fmt_f64(coupling.tau),
        fmt_f64(coupling.lambda),
        fmt_f64(coupling.omega),
        fmt_f64(m)
    );

    // bulk: above +edge and below −edge
    let mut bulk = String::new();
    for sign in [1.0, -1.0] {
        let bound = if sign > 0.0 { ax.top } else { ax.bottom };
        let _ = write!(bulk, "M{} {} ", fmt_f64(ax.px(kmin)), bound);
        for &k in ks {
            let _ = write!(bulk, "L{} {} ", fmt_f64(ax.px(k)), fmt_f64(ax.py(sign * edge(m, k).min(zr))));
        }
        let _ = write!(bulk, "L{} {} Z ", fmt_f64(ax.px(kmax)), bound);
    }
    let _ = writeln!(s, r##"<path class="bulk" d="{}" fill="#c8c8c8" stroke="none"/>"##, bulk.trim_end());

    // axes and ticks
    let _ = writeln!(
        s,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        ax.left,
        ax.top,
        ax.right - ax.left,
        ax.bottom - ax.top
    );
    for k in ticks(kmin, kmax) {
        let x = ax.px(k);
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{b}" x2="{x}" y2="{b2}" stroke="black"/><text x="{x}" y="{ty}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            fmt_f64(k),
            b = ax.bottom,
            b2 = ax.bottom + 5.0,
            ty = ax.bottom + 20.0
        );
    }
    for z in ticks(-zr, zr) {
        let y = ax.py(z);
        let _ = writeln!(
            s,
            r#"<line x1="{l2}" y1="{y}" x2="{l}" y2="{y}" stroke="black"/><text x="{tx}" y="{ty}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            fmt_f64(z),
            l = ax.left,
            l2 = ax.left - 5.0,
            tx = ax.left - 8.0,
            ty = y + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="590" font-family="sans-serif" font-size="14" text-anchor="middle">k</text><text x="20" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">z</text>"#,
        0.5 * (ax.left + ax.right),
        0.5 * (ax.top + ax.bottom)
    );

    // bands, sampled on the same grid as the CSV output
    let _ = writeln!(s, r#"<g clip-path="url(#plot-area)">"#);
    for b in bands {
        let pts: Vec<Option<(f64, f64)>> = ks.iter().map(|&k| b.value(k).map(|z| (ax.px(k), ax.py(z)))).collect();
        let _ = writeln!(
            s,
            r#"<path class="band" d="{}" fill="none" stroke="black" stroke-width="3" stroke-linejoin="round"><title>{}</title></path>"#,
            path_data(&pts),
            b.branch_id.as_str()
        );
    }
    let _ = writeln!(s, "</g>");

    // spectrum strip
    let _ = writeln!(
        s,
        r#"<rect class="spectrum-frame" x="{strip_l}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="0.5"/>"#,
        ax.top,
        strip_r - strip_l,
        ax.bottom - ax.top
    );
    for iv in spectrum.ac.intervals() {
        let (lo, hi) = (iv.lo.max(-zr), iv.hi.min(zr));
        if lo >= hi {
            continue;
        }
        let (y0, y1) = (ax.py(hi), ax.py(lo));
        let _ = writeln!(
            s,
            r##"<rect class="spectrum-ac" x="{strip_l}" y="{}" width="{}" height="{}" fill="#1f5fbf"/>"##,
            fmt_f64(y0),
            strip_r - strip_l,
            fmt_f64(y1 - y0)
        );
    }
    for p in &spectrum.pp {
        if p.value.abs() <= zr {
            let _ = writeln!(
                s,
                r##"<circle class="spectrum-pp" cx="{}" cy="{}" r="5" fill="#1f5fbf" stroke="black"/>"##,
                0.5 * (strip_l + strip_r),
                fmt_f64(ax.py(p.value))
            );
        }
    }
    let _ = writeln!(s, "</svg>");
    s
}
