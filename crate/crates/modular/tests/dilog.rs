use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use tetra_modular::identities::fourier_identity_sides;
use tetra_modular::{residual, ChiKind, Identity, ModularError, QDilogContext, QuadratureSettings};

const I: C64 = C64::new(0.0, 1.0);

fn contexts() -> [QDilogContext; 2] {
    [QDilogContext::default_strong(), QDilogContext::default_product()]
}

#[test]
fn half_shift_ratio_is_two() {
    for ctx in contexts() {
        let b = ctx.b();
        let r = ctx.phi(-I * b / 2.0).unwrap() / ctx.phi(I * b / 2.0).unwrap();
        assert!((r - 2.0).norm() < 1e-12, "b = {b}: {r}");
        let r = ctx.phi(-I / b / 2.0).unwrap() / ctx.phi(I / b / 2.0).unwrap();
        assert!((r - 2.0).norm() < 1e-12, "b = {b}: {r}");
    }
}

#[test]
fn phi_symmetric_under_b_inversion() {
    for ctx in contexts() {
        let dual = ctx.dual();
        for z in [C64::new(0.3, 0.1), C64::new(-1.1, -0.4), C64::new(2.0, 1.3)] {
            let (a, b) = (ctx.phi(z).unwrap(), dual.phi(z).unwrap());
            assert!(residual(a, b) < 1e-10, "{z}: {a} vs {b}");
        }
    }
}

#[test]
fn product_and_integral_routes_agree() {
    for ctx in contexts() {
        let z = C64::new(0.3, 0.0);
        let a = ctx.phi(z).unwrap();
        let p = ctx.phi_product(z).unwrap();
        assert!((a - p).norm() < 1e-10, "{a} vs {p}");
        let c2 = ctx.chi_sq(ChiKind::B, z).unwrap();
        assert!((c2 - ctx.chi_b_sq_product(z).unwrap()).norm() < 1e-10);
    }
}

#[test]
fn products_need_positive_imaginary_b_squared() {
    let ctx = QDilogContext::new(C64::new(0.8, -0.3)).unwrap();
    assert!(!ctx.product_valid());
    assert_eq!(ctx.phi_product(C64::new(0.3, 0.0)), Err(ModularError::ProductRegime(ctx.b())));
    // the integral route does not care
    let r = ctx.phi(-I * ctx.b() / 2.0).unwrap() / ctx.phi(I * ctx.b() / 2.0).unwrap();
    assert!((r - 2.0).norm() < 1e-12);
}

#[test]
fn rejects_nonpositive_real_part() {
    assert!(matches!(QDilogContext::new(C64::new(0.0, 1.0)), Err(ModularError::InvalidB(_))));
    assert!(matches!(QDilogContext::new(C64::new(-0.5, 0.2)), Err(ModularError::InvalidB(_))));
}

#[test]
fn contour_offset_must_avoid_poles() {
    let settings = QuadratureSettings { contour_offset: Some(5.0), ..QuadratureSettings::default() };
    let err = QDilogContext::with_settings(C64::from_polar(1.0, PI / 5.0), settings);
    assert!(matches!(err, Err(ModularError::Settings(_))));
}

#[test]
fn independent_of_contour_offset() {
    let b = C64::from_polar(1.0, PI / 5.0);
    let low = QuadratureSettings { contour_offset: Some(0.3), ..QuadratureSettings::default() };
    let high = QuadratureSettings { contour_offset: Some(0.9), ..QuadratureSettings::default() };
    let (a, c) = (QDilogContext::with_settings(b, low).unwrap(), QDilogContext::with_settings(b, high).unwrap());
    for z in [C64::new(0.4, 0.2), C64::new(-2.5, -0.5), C64::new(6.0, 0.0)] {
        assert!(residual(a.phi(z).unwrap(), c.phi(z).unwrap()) < 1e-11, "{z}");
        assert!(residual(a.chi_b(z).unwrap(), c.chi_b(z).unwrap()) < 1e-11, "{z}");
        assert!(residual(a.chi_b_inv(z).unwrap(), c.chi_b_inv(z).unwrap()) < 1e-11, "{z}");
    }
}

#[test]
fn direct_evaluation_is_confined_to_the_strip() {
    let ctx = QDilogContext::default_strong();
    let z = C64::new(0.1, 0.99 * ctx.strip_half_width());
    assert!(matches!(ctx.log_phi(z), Err(ModularError::OutsideStrip { .. })));
    assert!(matches!(ctx.chi_b(z), Err(ModularError::OutsideStrip { .. })));
    // continued values obey the difference equation across the strip edge
    let b = ctx.b();
    let l = ctx.phi(z - I * b / 2.0).unwrap() / ctx.phi(z + I * b / 2.0).unwrap();
    assert!(residual(l, 1.0 + (2.0 * PI * b * z).exp()) < 1e-12);
}

#[test]
fn unimodular_phi_is_a_phase() {
    let ctx = QDilogContext::default_strong();
    for k in 0..10 {
        let x = -3.0 + 0.67 * k as f64;
        assert!((ctx.phi(C64::new(x, 0.0)).unwrap().norm() - 1.0).abs() < 1e-8, "{x}");
    }
}

#[test]
fn chi_examples() {
    for ctx in contexts() {
        let b = ctx.b();
        let zero = C64::new(0.0, 0.0);
        assert!((ctx.chi_b(zero).unwrap() / ctx.chi_b(-zero).unwrap() - 1.0).norm() < 1e-15);

        let s = C64::new(0.4, 0.0);
        let eta = ctx.eta();
        let l = ctx.chi_b(s).unwrap() * ctx.chi_b_inv(s).unwrap();
        let r = ctx.phi((s + I * eta) / 2.0).unwrap() / ctx.phi((s - I * eta) / 2.0).unwrap();
        assert!((l - r).norm() < 1e-8);

        let s = C64::new(0.25, 0.0);
        let l = ctx.chi_b(s - I * b / 2.0).unwrap() / ctx.chi_b(s + I * b / 2.0).unwrap();
        let e = I * (PI * b * s).exp();
        let r = ((1.0 + e) / (1.0 - e)).sqrt();
        assert!((l - r).norm().min((l + r).norm()) < 1e-8, "{l} vs ±{r}");
    }
}

#[test]
fn chi_tends_to_one_on_the_left() {
    let ctx = QDilogContext::default_strong();
    for kind in [ChiKind::B, ChiKind::BInv] {
        assert!((ctx.chi(kind, C64::new(-15.0, 0.0)).unwrap() - 1.0).norm() < 1e-12);
    }
}

#[test]
fn fourier_identities_at_spec_points() {
    let ctx = QDilogContext::default_strong();
    let (lhs, rhs) = fourier_identity_sides(&ctx, Identity::FourierChiSquared, 0.1).unwrap();
    assert!(residual(lhs.value, rhs) < 1e-6, "{lhs:?} vs {rhs}");
    let (lhs, rhs) = fourier_identity_sides(&ctx, Identity::FourierChiProduct, 0.2).unwrap();
    assert!(residual(lhs.value, rhs) < 1e-6, "{lhs:?} vs {rhs}");
    assert!(fourier_identity_sides(&ctx, Identity::FourierChiSquared, 0.0).is_err());
}

#[test]
fn fourier_integrand_reflection() {
    // χ_b(σ)² e^{-2πiσλ} = χ_b(-σ)² e^{-2πi(-σ)(-λ)} e^{-πσ/b}
    let ctx = QDilogContext::default_strong();
    let b = ctx.b();
    let f = |s: f64, l: f64| ctx.chi_b(C64::new(s, 0.0)).unwrap().powi(2) * (-2.0 * PI * I * s * l).exp();
    for (s, l) in [(0.3, 0.1), (-1.2, 0.35), (2.0, -0.15)] {
        let r = f(-s, -l) * (-PI * s / b).exp();
        assert!(residual(f(s, l), r) < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn difference_equation_holds(x in -2.5f64..2.5, y in -0.2f64..0.2) {
        let ctx = QDilogContext::default_strong();
        let z = C64::new(x, y);
        for c in [ctx.b(), 1.0 / ctx.b()] {
            let l = ctx.phi(z - I * c / 2.0).unwrap() / ctx.phi(z + I * c / 2.0).unwrap();
            prop_assert!(residual(l, 1.0 + (2.0 * PI * c * z).exp()) < 1e-11);
        }
    }

    #[test]
    fn chi_reflection_holds(x in -3.0f64..3.0) {
        let ctx = QDilogContext::default_product();
        let s = C64::new(x, 0.0);
        let l = ctx.chi_b(s).unwrap() / ctx.chi_b(-s).unwrap();
        prop_assert!(residual(l, (-PI * s / (2.0 * ctx.b())).exp()) < 1e-12);
    }

    #[test]
    fn continued_chi_squared_obeys_both_equations(x in -1.5f64..1.5, y in -1.0f64..1.0) {
        let ctx = QDilogContext::default_strong();
        let b = ctx.b();
        let z = C64::new(x, y);
        let l = ctx.chi_sq(ChiKind::B, z - I * b / 2.0).unwrap() / ctx.chi_sq(ChiKind::B, z + I * b / 2.0).unwrap();
        let e = I * (PI * b * z).exp();
        prop_assert!(residual(l, (1.0 + e) / (1.0 - e)) < 1e-10);
        let l = ctx.chi_sq(ChiKind::B, z - I / b).unwrap() / ctx.chi_sq(ChiKind::B, z + I / b).unwrap();
        let r = (1.0 + (2.0 * PI * (z + I / (2.0 * b)) / b).exp()) / (1.0 + (2.0 * PI * (z - I / (2.0 * b)) / b).exp());
        prop_assert!(residual(l, r) < 1e-10);
    }
}
