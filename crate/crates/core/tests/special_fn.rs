mod common;

use common::{q_literal, OracleHarmonic};
use ellipsoid_lb::perturbation::{Family, ModeIndex};
use ellipsoid_lb::special_fn::{
    bessel_j, bessel_j_prime, bessel_root, gauss_legendre, legendre_p_normalized,
    legendre_p_normalized_dphi, legendre_q, BesselKind, LegendreMode, LegendreTable,
};
use proptest::prelude::*;

fn mode(l: usize, m: usize) -> LegendreMode {
    LegendreMode::new(l, m).unwrap()
}

#[test]
fn q_matches_rodrigues_polynomial() {
    for l in 0..=10 {
        for m in 0..=l {
            for &t in &[-0.93, -0.4, 0.0, 0.27, 0.81, 0.999] {
                let want = q_literal(l, m, t);
                let got = legendre_q(mode(l, m), t).unwrap();
                assert!(
                    (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                    "Q({l},{m})({t}) = {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn normalized_p_matches_quadrature_normalized_oracle() {
    // P(cos phi) cos(m theta) is a unit harmonic, as is the oracle
    for l in 0..=9 {
        for m in 0..=l {
            let h = OracleHarmonic::new(ModeIndex {
                l,
                m,
                family: Family::Cos,
            });
            for &phi in &[0.2, 0.9, 1.57, 2.4, 3.0] {
                let want = h.profile(phi);
                let got = legendre_p_normalized(mode(l, m), phi.cos()).unwrap();
                assert!(
                    (got - want).abs() < 1e-11,
                    "P({l},{m}) at {phi}: {got} vs {want}"
                );
                let d = legendre_p_normalized_dphi(mode(l, m), phi.cos()).unwrap();
                let fd = (h.profile(phi + 1e-5) - h.profile(phi - 1e-5)) / 2e-5;
                assert!((d - fd).abs() < 1e-6 * fd.abs().max(1.0));
            }
        }
    }
}

#[test]
fn table_agrees_with_single_mode_calls() {
    let t = 0.37;
    let table = LegendreTable::new(8, t);
    for l in 0..=8 {
        for m in 0..=l {
            assert_eq!(table.p(l, m), legendre_p_normalized(mode(l, m), t).unwrap());
            assert_eq!(
                table.dphi(l, m),
                legendre_p_normalized_dphi(mode(l, m), t).unwrap()
            );
        }
    }
}

#[test]
fn bessel_roots_are_zeros_and_interlace() {
    for m in 0..=5 {
        let mut prev_j = 0.0;
        for k in 1..=6 {
            let j = bessel_root(m, k, BesselKind::J).unwrap();
            let jp = bessel_root(m, k, BesselKind::JPrime).unwrap();
            assert!(bessel_j(m, j).abs() < 1e-12, "J_{m} root {k}");
            assert!(bessel_j_prime(m, jp).abs() < 1e-12, "J'_{m} root {k}");
            assert!(j > prev_j);
            // positive roots of J'_m precede those of J_m for m >= 1
            if m >= 1 {
                assert!(jp < j);
            }
            prev_j = j;
        }
    }
    assert!((bessel_root(0, 1, BesselKind::J).unwrap() - 2.404_825_557_695_773).abs() < 1e-12);
    assert!((bessel_root(1, 1, BesselKind::J).unwrap() - 3.831_705_970_207_512).abs() < 1e-12);
    assert!((bessel_root(1, 1, BesselKind::JPrime).unwrap() - 1.841_183_781_340_659).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn legendre_orthogonal_in_t(l1 in 0usize..12, l2 in 0usize..12, m in 0usize..6) {
        prop_assume!(m <= l1 && m <= l2);
        let rule = gauss_legendre(30);
        let ip = rule.integrate(|t| {
            legendre_p_normalized(mode(l1, m), t).unwrap() * legendre_p_normalized(mode(l2, m), t).unwrap()
        });
        let theta_norm = if m == 0 { 2.0 * std::f64::consts::PI } else { std::f64::consts::PI };
        let want = if l1 == l2 { 1.0 } else { 0.0 };
        prop_assert!((ip * theta_norm - want).abs() < 1e-12);
    }

    #[test]
    fn bessel_three_term_recurrence(m in 1usize..8, x in 0.5f64..40.0) {
        let lhs = bessel_j(m - 1, x) + bessel_j(m + 1, x);
        let rhs = 2.0 * m as f64 / x * bessel_j(m, x);
        prop_assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn bessel_derivative_identity(m in 1usize..8, x in 0.5f64..40.0) {
        let want = 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x));
        prop_assert!((bessel_j_prime(m, x) - want).abs() < 1e-12);
    }

    #[test]
    fn gauss_rule_is_exact_for_monomials(n in 1usize..30, k in 0usize..60) {
        prop_assume!(k < 2 * n);
        let rule = gauss_legendre(n);
        let got = rule.integrate(|t| t.powi(k as i32));
        let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
        prop_assert!((got - want).abs() < 1e-13);
    }
}
