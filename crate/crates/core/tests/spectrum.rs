use diracline_core::coupling::Coupling;
use diracline_core::fiber::bands;
use diracline_core::mat2::spinor_norm_sqr;
use diracline_core::spectrum::{
    assemble_spectrum, group_velocity, predicted_point_spectrum, propagate_packet, special_case_table,
    CaseTag, GaussianEnvelope, Interval, IntervalSet, SpecialFamily, WavePacket,
};
use proptest::prelude::*;

fn reduced() -> impl Strategy<Value = Coupling> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -2.0f64..2.0)
        .prop_map(|(e, t, l, m)| Coupling::reduced(e, t, l, m))
        .prop_filter("d away from -4", |c| (c.d() + 4.0).abs() > 1e-3)
}

/// Couplings on `d = 4`: `η = ±sqrt(4 + τ² + λ²)`.
fn d4() -> impl Strategy<Value = Coupling> {
    (-3.0f64..3.0, -3.0f64..3.0, prop::bool::ANY, -2.0f64..2.0).prop_map(|(t, l, s, m)| {
        let e = (4.0 + t * t + l * l).sqrt();
        Coupling::reduced(if s { e } else { -e }, t, l, m)
    })
}

fn norm(v: [diracline_core::Complex64; 2]) -> f64 {
    spinor_norm_sqr(v).sqrt()
}

proptest! {
    #[test]
    fn singular_continuous_part_is_empty_and_ac_contains_the_free_spectrum(c in reduced()) {
        let s = assemble_spectrum(&c).unwrap();
        prop_assert!(s.sc.is_empty());
        prop_assert!(s.pp.len() <= 1);
        let m = c.mass.abs();
        for x in [m, -m, m + 1.0, -m - 1.0, 1e6, -1e6] {
            prop_assert!(s.ac.contains(x));
        }
    }

    #[test]
    fn point_spectrum_follows_the_classification(c in reduced()) {
        let s = assemble_spectrum(&c).unwrap();
        let computed: Vec<f64> = s.pp.iter().map(|p| p.value).collect();
        prop_assert_eq!(computed, predicted_point_spectrum(&c));
        for p in &s.pp {
            prop_assert_eq!(p.embedded, s.ac.closure_contains(p.value, 1e-12));
        }
    }

    #[test]
    fn d4_point_spectrum_and_velocity(c in d4()) {
        let s = assemble_spectrum(&c).unwrap();
        let b = bands(&c).unwrap();
        prop_assert_eq!(b.len(), 1);
        let v = group_velocity(&b[0]).unwrap();
        prop_assert!(v.abs() < 1.0);
        prop_assert!((v + c.lambda / c.eta).abs() < 1e-15);
        if c.lambda != 0.0 {
            prop_assert_eq!(s.case_tag, CaseTag::ThmI);
            prop_assert!(s.ac.is_real_line() && s.pp.is_empty());
        }
    }

    #[test]
    fn massless_embedded_eigenvalue(e in -3.0f64..3.0, l in -3.0f64..3.0, plus in prop::bool::ANY) {
        // d − 4 = ±4λ with d = η² − τ² − λ² fixes τ² = η² − λ² − 4 ∓ 4λ
        let t2 = e * e - l * l - 4.0 - if plus { 4.0 * l } else { -4.0 * l };
        prop_assume!(t2 >= 0.0 && l.abs() > 1e-3);
        let c = Coupling::reduced(e, t2.sqrt(), l, 0.0);
        prop_assume!((c.d() - 4.0).abs() > 1e-6 && (c.d() + 4.0).abs() > 1e-3);
        let s = assemble_spectrum(&c).unwrap();
        prop_assert!(s.ac.is_real_line());
        prop_assert_eq!(s.pp.len(), 1);
        prop_assert!(s.pp[0].value == 0.0 && s.pp[0].embedded);
        prop_assert_eq!(s.case_tag, CaseTag::ThmIII);
    }

    #[test]
    fn normalization_is_idempotent(v in prop::collection::vec((-5.0f64..5.0, 0.0f64..3.0, prop::bool::ANY, prop::bool::ANY), 0..8)) {
        let s = IntervalSet::from_intervals(v.iter().map(|&(lo, w, a, b)| Interval::new(lo, lo + w, a, b)));
        let mut t = s.clone();
        t.normalize();
        prop_assert_eq!(&s, &t);
        for w in s.intervals().windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for &(lo, w, a, b) in &v {
            let iv = Interval::new(lo, lo + w, a, b);
            for x in [lo, lo + 0.5 * w, lo + w] {
                if iv.contains(x) {
                    prop_assert!(s.contains(x));
                }
            }
        }
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as i64;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

#[test]
fn assembly_matches_special_tables_on_dense_grids() {
    for &m in &[1.0, -0.7, 0.0] {
        for eta in grid(-4.0, 4.0, 0.1) {
            let a = assemble_spectrum(&SpecialFamily::Electrostatic.coupling(eta, m)).unwrap();
            let t = special_case_table(SpecialFamily::Electrostatic, eta, m);
            assert!(a.approx_eq(&t, 1e-10), "electrostatic {eta} {m}: {a:?} vs {t:?}");
        }
        for tau in grid(-4.0, 4.0, 0.1) {
            if (tau.abs() - 2.0).abs() < 1e-9 {
                continue;
            }
            let a = assemble_spectrum(&SpecialFamily::Lorentz.coupling(tau, m)).unwrap();
            let t = special_case_table(SpecialFamily::Lorentz, tau, m);
            assert!(a.approx_eq(&t, 1e-10), "lorentz {tau} {m}: {a:?} vs {t:?}");
        }
        for lam in grid(-4.0, 4.0, 0.1) {
            if (lam.abs() - 2.0).abs() < 1e-9 {
                continue;
            }
            let a = assemble_spectrum(&SpecialFamily::Magnetic.coupling(lam, m)).unwrap();
            let t = special_case_table(SpecialFamily::Magnetic, lam, m);
            assert!(a.approx_eq(&t, 1e-10), "magnetic {lam} {m}: {a:?} vs {t:?}");
        }
    }
}

#[test]
fn spectral_transition_at_d4() {
    let (tau, m) = (1.0f64, 1.0f64);
    for lam in [0.5, 0.1, 1e-3, 1e-6] {
        let eta = (4.0 + tau * tau + lam * lam).sqrt();
        let s = assemble_spectrum(&Coupling::reduced(eta, tau, lam, m)).unwrap();
        assert!(s.ac.is_real_line() && s.pp.is_empty() && s.case_tag == CaseTag::ThmI);
    }
    let eta = 5.0f64.sqrt();
    let s = assemble_spectrum(&Coupling::reduced(eta, tau, 0.0, m)).unwrap();
    assert_eq!(s.ac, IntervalSet::free(m));
    assert_eq!(s.pp.len(), 1);
    assert!((s.pp[0].value + tau * m / eta).abs() < 1e-15 && !s.pp[0].embedded);
    assert_eq!(s.case_tag, CaseTag::ThmII);
}

#[test]
fn lorentz_gap_shrinks_from_both_ends() {
    let s = special_case_table(SpecialFamily::Lorentz, -1.0, 1.0);
    let iv = s.ac.intervals();
    assert!((iv[0].hi + 0.6).abs() < 1e-15 && (iv[1].lo - 0.6).abs() < 1e-15);
}

#[test]
fn linear_band_packet_translates_without_dispersion() {
    let c = Coupling::reduced(3.0, 2.0, 1.0, 1.0);
    let band = bands(&c).unwrap().remove(0);
    let v = group_velocity(&band).unwrap();
    let p = WavePacket::new(c, band, GaussianEnvelope::new(0.0, 0.3), 256).unwrap();
    for t in [1.0, 5.0] {
        let mut worst: f64 = 0.0;
        for i in 0..16 {
            for j in 0..16 {
                let x = -2.0 + 4.0 * i as f64 / 15.0;
                let y = -8.0 + 16.0 * j as f64 / 15.0;
                let a = norm(propagate_packet(&p, x, y, t));
                let b = norm(propagate_packet(&p, x, y - v * t, 0.0));
                worst = worst.max((a - b).abs());
            }
        }
        assert!(worst < 1e-3, "t = {t}: {worst}");
    }
}

#[test]
fn curved_band_packet_disperses() {
    // control: the same comparison fails for a non-linear band
    let c = Coupling::reduced(1.0, 0.0, 0.0, 1.0);
    let band = bands(&c).unwrap().remove(0);
    let k0 = 1.0;
    let v = band.law.derivative(k0);
    let p = WavePacket::new(c, band, GaussianEnvelope::new(k0, 0.3), 256).unwrap();
    let t = 20.0;
    let mut worst: f64 = 0.0;
    for j in 0..64 {
        let y = v * t - 8.0 + 16.0 * j as f64 / 63.0;
        let a = norm(propagate_packet(&p, 0.0, y, t));
        let b = norm(propagate_packet(&p, 0.0, y - v * t, 0.0));
        worst = worst.max((a - b).abs());
    }
    assert!(worst > 1e-2);
}

#[test]
fn packet_reevaluation_is_deterministic() {
    let c = Coupling::reduced(0.0, -1.0, 0.0, 1.0);
    let band = bands(&c).unwrap().remove(0);
    let p = WavePacket::new(c, band, GaussianEnvelope::new(0.2, 0.25), 300).unwrap();
    assert_eq!(p.node_count(), 300);
    assert_eq!(propagate_packet(&p, 0.3, -0.1, 0.0), propagate_packet(&p, 0.3, -0.1, 0.0));
}
