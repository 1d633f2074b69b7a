use ellipsoid_lb::eigensolve::{
    eig_dense_symmetric, eig_generalized, eig_tridiagonal, SymMatrix, SymTridiagonal,
};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

fn sorted_nalgebra(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

fn symmetric_from(n: usize, raw: &[f64]) -> (SymMatrix, DMatrix<f64>) {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = 0.5 * (raw[i * n + j] + raw[j * n + i]);
        }
    }
    (
        SymMatrix::from_row_major(n, data.clone()).unwrap(),
        DMatrix::from_row_slice(n, n, &data),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tridiagonal_matches_nalgebra(
        diag in prop::collection::vec(-5.0f64..5.0, 1..40),
        seed in prop::collection::vec(-2.0f64..2.0, 40),
    ) {
        let n = diag.len();
        let off = seed[..n - 1].to_vec();
        let t = SymTridiagonal::new(diag.clone(), off.clone()).unwrap();
        let pairs = eig_tridiagonal(&t).unwrap();
        let mut dense = DMatrix::zeros(n, n);
        for i in 0..n {
            dense[(i, i)] = diag[i];
            if i + 1 < n {
                dense[(i, i + 1)] = off[i];
                dense[(i + 1, i)] = off[i];
            }
        }
        for (g, w) in pairs.values.iter().zip(sorted_nalgebra(&dense)) {
            prop_assert!((g - w).abs() < 1e-11);
        }
        for (v, x) in pairs.values.iter().zip(&pairs.vectors) {
            let r = t.mul_vec(x);
            let res = r.iter().zip(x).map(|(ri, xi)| (ri - v * xi).powi(2)).sum::<f64>().sqrt();
            prop_assert!(res < 1e-10);
        }
    }

    #[test]
    fn dense_matches_nalgebra(n in 1usize..24, raw in prop::collection::vec(-3.0f64..3.0, 576)) {
        let (a, dense) = symmetric_from(n, &raw[..n * n]);
        let pairs = eig_dense_symmetric(&a).unwrap();
        for (g, w) in pairs.values.iter().zip(sorted_nalgebra(&dense)) {
            prop_assert!((g - w).abs() < 1e-10);
        }
    }

    #[test]
    fn generalized_matches_cholesky_reduction(n in 2usize..16, raw in prop::collection::vec(-1.0f64..1.0, 512)) {
        let (a, a_dense) = symmetric_from(n, &raw[..n * n]);
        let b_raw = DMatrix::from_row_slice(n, n, &raw[256..256 + n * n]);
        let b_dense = &b_raw * b_raw.transpose() + DMatrix::identity(n, n) * n as f64;
        let b = SymMatrix::from_row_major(n, b_dense.as_slice().to_vec()).unwrap();
        let pairs = eig_generalized(&a, &b, n).unwrap();
        let l = b_dense.clone().cholesky().unwrap().l();
        let li = l.clone().try_inverse().unwrap();
        let c = &li * &a_dense * li.transpose();
        let c = (&c + c.transpose()) * 0.5;
        for (g, w) in pairs.values.iter().zip(sorted_nalgebra(&c)) {
            prop_assert!((g - w).abs() < 1e-10);
        }
        // B-orthonormal eigenvectors
        for (i, x) in pairs.vectors.iter().enumerate() {
            for (j, y) in pairs.vectors.iter().enumerate() {
                let by = b.mul_vec(y);
                let ip: f64 = x.iter().zip(&by).map(|(p, q)| p * q).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((ip - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn rejects_indefinite_mass() {
    let a = SymMatrix::identity(2);
    let m = SymMatrix::from_row_major(2, vec![1.0, 2.0, 2.0, 1.0]).unwrap();
    assert!(eig_generalized(&a, &m, 2).is_err());
}
