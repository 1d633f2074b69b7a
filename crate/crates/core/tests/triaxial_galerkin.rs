use ellipsoid_lb::geometry::EllipsoidSpec;
use ellipsoid_lb::triaxial_galerkin::{
    assemble_galerkin, level_cluster, slope_extraction, solve_triaxial, GalerkinBasis,
};

fn spec(a: f64, b: f64, c: f64) -> EllipsoidSpec {
    EllipsoidSpec::from_axes(a, b, c).unwrap()
}

#[test]
fn spectrum_is_invariant_under_axis_permutations() {
    let (a, b, c) = (1.08, 0.93, 1.0);
    let base = solve_triaxial(&spec(a, b, c), 10, 40).unwrap().values;
    for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
        let other = solve_triaxial(&spec(x, y, z), 10, 40).unwrap().values;
        for (p, q) in base.iter().zip(&other) {
            assert!((p - q).abs() < 1e-10, "({x},{y},{z}): {p} vs {q}");
        }
    }
}

#[test]
fn raising_the_degree_leaves_low_values_unchanged() {
    let s = EllipsoidSpec::from_perturbation(1.0, -1.0, 0.0, 0.1).unwrap();
    let coarse = solve_triaxial(&s, 12, 36).unwrap().values;
    let fine = solve_triaxial(&s, 16, 36).unwrap().values;
    for (p, q) in coarse.iter().zip(&fine) {
        assert!((p - q).abs() < 1e-8, "{p} vs {q}");
    }
}

#[test]
fn constants_give_the_zero_eigenvalue_and_levels_stay_separated() {
    for eps in [0.05, 0.1] {
        let s = EllipsoidSpec::from_perturbation(0.6, -0.9, 0.3, eps).unwrap();
        let v = solve_triaxial(&s, 12, 60).unwrap().values;
        assert!(v[0].abs() < 1e-10);
        for l in 0..=5 {
            assert_eq!(level_cluster(&v, l).unwrap().len(), 2 * l + 1);
        }
    }
}

#[test]
fn triaxial_second_eigenvalue_reference() {
    // reference value good to about three digits
    let s = EllipsoidSpec::from_perturbation(1.0, -1.0, 0.0, 0.2).unwrap();
    let v = solve_triaxial(&s, 12, 4).unwrap().values;
    assert!((v[1] - 1.69763).abs() < 2e-2, "{}", v[1]);
}

#[test]
fn slopes_approach_the_closed_form_linearly() {
    let t = slope_extraction(0.0, 1.0, -1.0, &[0.05, 0.025], 2, 12).unwrap();
    let err = |k: usize| {
        t.slopes[k]
            .iter()
            .zip(&t.exact)
            .map(|(s, e)| (s - e).abs())
            .fold(0.0, f64::max)
    };
    let ratio = err(1) / err(0);
    assert!((0.35..=0.65).contains(&ratio), "error ratio {ratio}");
}

#[test]
fn biaxial_matrices_do_not_couple_families() {
    let mats = assemble_galerkin(&spec(1.0, 1.0, 1.2), 6).unwrap();
    let labels = &mats.basis.labels;
    for (i, p) in labels.iter().enumerate() {
        for (j, q) in labels.iter().enumerate() {
            if p.m != q.m || p.family != q.family {
                assert!(mats.stiffness.get(i, j).abs() < 1e-12);
                assert!(mats.mass.get(i, j).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn triaxial_coupling_moves_m_by_two() {
    let mats = assemble_galerkin(&spec(1.0, 1.2, 0.8), 10).unwrap();
    let labels = &mats.basis.labels;
    let mut coupled = false;
    for (i, p) in labels.iter().enumerate() {
        for (j, q) in labels.iter().enumerate() {
            let k = mats.stiffness.get(i, j);
            if p.family != q.family || (p.m as i64 - q.m as i64) % 2 != 0 {
                assert!(k.abs() < 1e-12);
            } else if p.m.abs_diff(q.m) == 2 && k.abs() > 1e-6 {
                coupled = true;
            }
        }
    }
    assert!(coupled);
}

#[test]
fn basis_size_and_limits() {
    assert_eq!(GalerkinBasis::new(12).len(), 169);
    assert!(solve_triaxial(&EllipsoidSpec::sphere(), 12, 85).is_err());
    assert!(slope_extraction(0.0, 1.0, -1.0, &[0.0], 1, 8).is_err());
    assert!(slope_extraction(0.0, 1.0, -1.0, &[0.1], 7, 8).is_err());
}
