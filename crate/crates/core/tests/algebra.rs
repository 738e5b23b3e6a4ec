use diracline_core::coupling::{
    classify, minus_four_over_d_partner, phase_from_x, reduce_omega, reduce_omega_all, Coupling,
};
use diracline_core::fiber::transmission_matrix;
use diracline_core::mat2::{Mat2, SIGMA0, SIGMA1, SIGMA2, SIGMA3};
use diracline_core::Complex64;
use proptest::prelude::*;

/// `exp(B)` by scaling and squaring with a long Taylor series; shares no
/// code with the closed form.
fn exp_series(b: &Mat2) -> Mat2 {
    let norm = b.max_abs();
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 0.25 {
        s += 1;
    }
    let a = *b * (1.0 / 2f64.powi(s as i32));
    let mut term = Mat2::IDENTITY;
    let mut sum = Mat2::IDENTITY;
    for n in 1..30 {
        term = term * a * (1.0 / n as f64);
        sum = sum + term;
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat() -> impl Strategy<Value = Mat2> {
    prop::array::uniform8(-2.0f64..2.0)
        .prop_map(|v| Mat2::new(c(v[0], v[1]), c(v[2], v[3]), c(v[4], v[5]), c(v[6], v[7])))
}

fn coupling() -> impl Strategy<Value = Coupling> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -2.0f64..2.0, -2.0f64..2.0)
        .prop_map(|(e, t, l, o, m)| Coupling::new(e, t, l, o, m))
}

fn reduced_coupling() -> impl Strategy<Value = Coupling> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0, -2.0f64..2.0)
        .prop_map(|(e, t, l, m)| Coupling::reduced(e, t, l, m))
}

proptest! {
    #[test]
    fn exp_matches_scaling_and_squaring(b in mat()) {
        let closed = b.exp_closed();
        let series = exp_series(&b);
        prop_assert!(closed.scaled_diff(&series) < 1e-12, "{:?} vs {:?}", closed, series);
    }

    #[test]
    fn exp_of_negation_is_inverse(b in mat()) {
        let p = b.exp_closed() * (-b).exp_closed();
        prop_assert!(p.scaled_diff(&Mat2::IDENTITY) < 1e-11);
    }

    #[test]
    fn det_of_exp_is_exp_of_trace(b in mat()) {
        let lhs = b.exp_closed().det();
        let rhs = b.trace().exp();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm().max(1.0));
    }

    #[test]
    fn small_generators_use_the_series_branch(b in mat(), s in 1e-9f64..1e-4) {
        let a = b * s;
        prop_assert!(a.exp_closed().scaled_diff(&exp_series(&a)) < 1e-14);
    }

    #[test]
    fn pauli_decomposition_roundtrip(b in mat()) {
        let p = b.pauli();
        prop_assert!(p.recompose().scaled_diff(&b) < 1e-15);
        let direct = SIGMA0 * p.c0 + SIGMA1 * p.c1 + SIGMA2 * p.c2 + SIGMA3 * p.c3;
        prop_assert!(direct.scaled_diff(&b) < 1e-15);
    }

    #[test]
    fn interaction_matrix_is_hermitian_with_real_pauli_coefficients(cp in coupling()) {
        let m = cp.interaction_matrix();
        prop_assert!(m.is_hermitian(1e-15));
        let p = m.pauli();
        prop_assert!(p.is_real(1e-15));
        for (got, want) in [(p.c0.re, cp.eta), (p.c1.re, cp.omega), (p.c2.re, cp.lambda), (p.c3.re, cp.tau)] {
            prop_assert!((got - want).abs() < 1e-15 * want.abs().max(1.0));
        }
    }

    #[test]
    fn transmission_matrix_has_unimodular_determinant(cp in coupling()) {
        prop_assume!(!classify(&cp).is_confining);
        let t = transmission_matrix(&cp).unwrap();
        prop_assert!((t.det_modulus() - 1.0).abs() < 1e-10 * t.lambda_matrix.max_abs().powi(2).max(1.0));
    }

    #[test]
    fn transmission_matrix_matches_reduced_closed_form(cp in reduced_coupling()) {
        let d = cp.d();
        prop_assume!((d + 4.0).abs() > 1e-3);
        let l = transmission_matrix(&cp).unwrap().lambda_matrix;
        // 4/(4+d)·((4−d)/4 σ0 + λσ3 − iησ1 − τσ2)
        let expected = (SIGMA0 * ((4.0 - d) / 4.0) + SIGMA3 * cp.lambda
            - SIGMA1 * c(0.0, cp.eta) - SIGMA2 * cp.tau) * (4.0 / (4.0 + d));
        prop_assert!(l.scaled_diff(&expected) < 1e-12);
    }

    #[test]
    fn gauge_roots_solve_the_quadratic(cp in coupling()) {
        prop_assume!(cp.omega != 0.0);
        for g in reduce_omega_all(&cp) {
            let scale = 4.0 + cp.d().abs() * g.x_factor.abs().powi(2);
            prop_assert!(g.quadratic_residual(&cp).abs() < 1e-10 * scale);
            prop_assert!((g.phase.norm() - 1.0).abs() < 1e-13);
            prop_assert!((g.phase - phase_from_x(cp.omega, g.x_factor)).norm() < 1e-8);
            prop_assert_eq!(g.reduced.omega, 0.0);
        }
    }

    #[test]
    fn gauge_conjugates_the_transmission_matrix(cp in coupling()) {
        prop_assume!(cp.omega != 0.0);
        let g = reduce_omega(&cp);
        prop_assume!((g.reduced.d() + 4.0).abs() > 1e-3);
        // ψ(0+) = Λψ(0−) with ψ(0−) = phase·φ(0−), ψ(0+) = φ(0+): Λ_red = Λ·phase
        let l = transmission_matrix(&cp).unwrap().lambda_matrix;
        let lr = transmission_matrix(&g.reduced).unwrap().lambda_matrix;
        prop_assert!((l * g.phase).scaled_diff(&lr) < 1e-9);
    }

    #[test]
    fn partner_map_is_an_involution(cp in reduced_coupling()) {
        let d = cp.d();
        prop_assume!((d + 4.0).abs() > 0.1 && d.abs() > 0.1);
        let p = minus_four_over_d_partner(&cp).unwrap();
        prop_assert!((p.d() - 16.0 / d).abs() < 1e-10 * (16.0 / d).abs().max(1.0));
        let back = minus_four_over_d_partner(&p).unwrap();
        prop_assert!((back.eta - cp.eta).abs() < 1e-12 * cp.eta.abs().max(1.0));
        prop_assert!((back.tau - cp.tau).abs() < 1e-12 * cp.tau.abs().max(1.0));
        prop_assert!((back.lambda - cp.lambda).abs() < 1e-12 * cp.lambda.abs().max(1.0));
    }

    #[test]
    fn partner_map_preserves_the_transmission_matrix_up_to_sign(cp in reduced_coupling()) {
        let d = cp.d();
        prop_assume!((d + 4.0).abs() > 0.1 && d.abs() > 0.1);
        let p = minus_four_over_d_partner(&cp).unwrap();
        let l = transmission_matrix(&cp).unwrap().lambda_matrix;
        let lp = transmission_matrix(&p).unwrap().lambda_matrix;
        prop_assert!((l * -1.0).scaled_diff(&lp) < 1e-10);
    }

    #[test]
    fn criticality_is_invariant_under_the_partner_map(e in -3.0f64..3.0, t in -3.0f64..3.0, sign in prop::bool::ANY) {
        // λ on the critical surface (d/4 − 1)² = λ²: λ² + 4λ + 4 = η² − τ²
        let d0 = e * e - t * t;
        prop_assume!(d0 >= 0.0);
        let lam = d0.sqrt() - 2.0;
        let lam = if sign { lam } else { -lam };
        let cp = Coupling::reduced(e, t, lam, 1.0);
        let d = cp.d();
        prop_assume!(classify(&cp).is_critical && (d + 4.0).abs() > 0.1 && d.abs() > 0.1);
        let p = minus_four_over_d_partner(&cp).unwrap();
        let crit = (p.d() / 4.0 - 1.0).powi(2) - p.lambda * p.lambda;
        prop_assert!(crit.abs() < 1e-9 * (p.lambda * p.lambda).max(1.0));
    }
}

#[test]
fn pure_omega_reduces_to_free() {
    let g = reduce_omega(&Coupling::new(0.0, 0.0, 0.0, 2.0, 1.0));
    assert!((g.x_factor - 0.5).abs() < 1e-15);
    assert_eq!(g.reduced, Coupling::reduced(0.0, 0.0, 0.0, 1.0));
}
