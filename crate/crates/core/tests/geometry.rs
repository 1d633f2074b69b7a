use std::f64::consts::PI;

use ellipsoid_lb::geometry::{
    a1_coeffs, laplace_coeffs, metric_biaxial, metric_triaxial, EllipsoidSpec,
};
use proptest::prelude::*;

fn axes_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.3f64..3.0, 0.3f64..3.0, 0.3f64..3.0)
}

#[test]
fn a1_is_the_derivative_of_the_operator_in_eps() {
    let (alpha, beta, gamma) = (0.4, -1.1, 0.7);
    let h = 1e-5;
    for &phi in &[0.3, 1.1, 1.9, 2.8] {
        for &theta in &[0.0, 0.7, 2.2, 4.0, 5.9] {
            let plus =
                EllipsoidSpec::from_axes(1.0 + alpha * h, 1.0 + beta * h, 1.0 + gamma * h).unwrap();
            let minus =
                EllipsoidSpec::from_axes(1.0 - alpha * h, 1.0 - beta * h, 1.0 - gamma * h).unwrap();
            let p = laplace_coeffs(&plus, phi, theta).unwrap();
            let m = laplace_coeffs(&minus, phi, theta).unwrap();
            let a1 = a1_coeffs(alpha, beta, gamma, phi, theta).unwrap();
            let fd = [
                (p.a - m.a) / (2.0 * h),
                (p.b - m.b) / (2.0 * h),
                (p.c - m.c) / (2.0 * h),
                (p.e - m.e) / (2.0 * h),
                (p.f - m.f) / (2.0 * h),
            ];
            let got = [a1.a, a1.b, a1.c, a1.e, a1.f];
            for (g, f) in got.iter().zip(&fd) {
                assert!(
                    (g - f).abs() < 1e-6 * f.abs().max(1.0),
                    "phi={phi} theta={theta}: {g} vs {f}"
                );
            }
        }
    }
}

#[test]
fn triaxial_metric_reduces_to_biaxial() {
    let spec = EllipsoidSpec::from_axes(1.3, 1.3, 0.6).unwrap();
    for &phi in &[0.2, 1.0, 2.5] {
        for &theta in &[0.0, 1.3, 4.4] {
            let t = metric_triaxial(&spec, phi, theta);
            let b = metric_biaxial(1.3, 0.6, phi);
            assert!((t.g11 - b.g11).abs() < 1e-14);
            assert!((t.g22 - b.g22).abs() < 1e-14);
            assert!(t.g12.abs() < 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn metric_is_positive_definite_off_the_poles(
        (a, b, c) in axes_strategy(),
        phi in 0.01f64..(PI - 0.01),
        theta in 0.0f64..(2.0 * PI),
    ) {
        let spec = EllipsoidSpec::from_axes(a, b, c).unwrap();
        let g = metric_triaxial(&spec, phi, theta);
        prop_assert!(g.g11 > 0.0 && g.g22 > 0.0);
        prop_assert!(g.d > 0.0);
        prop_assert!((g.d - (g.g11 * g.g22 - g.g12 * g.g12)).abs() <= 1e-12 * g.d.max(1.0));
    }

    #[test]
    fn sphere_rescaling_scales_the_operator(
        r in 0.3f64..3.0,
        phi in 0.05f64..(PI - 0.05),
        theta in 0.0f64..(2.0 * PI),
    ) {
        let unit = laplace_coeffs(&EllipsoidSpec::sphere(), phi, theta).unwrap();
        let big = laplace_coeffs(&EllipsoidSpec::from_axes(r, r, r).unwrap(), phi, theta).unwrap();
        let s = r * r;
        prop_assert!((big.a * s - unit.a).abs() < 1e-12);
        prop_assert!((big.c * s - unit.c).abs() < 1e-10 * unit.c.abs().max(1.0));
        prop_assert!((big.e * s - unit.e).abs() < 1e-10 * unit.e.abs().max(1.0));
        prop_assert!(big.b.abs() < 1e-12 && big.f.abs() < 1e-12);
    }

    #[test]
    fn a1_is_linear_in_the_parameters(
        p in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
        q in (-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0),
        phi in 0.05f64..(PI - 0.05),
        theta in 0.0f64..(2.0 * PI),
    ) {
        let x = a1_coeffs(p.0, p.1, p.2, phi, theta).unwrap();
        let y = a1_coeffs(q.0, q.1, q.2, phi, theta).unwrap();
        let s = a1_coeffs(p.0 + q.0, p.1 + q.1, p.2 + q.2, phi, theta).unwrap();
        let sum = [x.a + y.a, x.b + y.b, x.c + y.c, x.e + y.e, x.f + y.f];
        let got = [s.a, s.b, s.c, s.e, s.f];
        for (g, w) in got.iter().zip(&sum) {
            prop_assert!((g - w).abs() <= 1e-9 * w.abs().max(1.0));
        }
    }
}
