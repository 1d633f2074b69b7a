//! Symmetric eigenvalue kernels: implicit-shift QL for tridiagonal matrices,
//! cyclic Jacobi for dense matrices, and Cholesky reduction for the
//! generalized symmetric-definite problem.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 30;
const MAX_JACOBI_SWEEPS: usize = 100;

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "tridiagonal needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite tridiagonal entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    pub fn to_dense(&self) -> SymMatrix {
        let n = self.len();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.diag[i]);
            if i + 1 < n {
                m.set(i, i + 1, self.offdiag[i]);
                m.set(i + 1, i, self.offdiag[i]);
            }
        }
        m
    }
}

/// Dense square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij - a_ji|` relative to the Frobenius norm.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        let norm = self.frobenius();
        if norm == 0.0 {
            0.0
        } else {
            worst / norm
        }
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<f64>>,
    /// Largest residual `|A v - lambda v|` (or `|A v - lambda M v|`) in the
    /// max norm.
    pub residual_bound: f64,
}

impl EigenPairs {
    fn sorted(mut values: Vec<f64>, mut vectors: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        values = order.iter().map(|&i| values[i]).collect();
        let mut taken: Vec<Option<Vec<f64>>> = vectors.drain(..).map(Some).collect();
        vectors = order.iter().map(|&i| taken[i].take().unwrap()).collect();
        for v in &mut vectors {
            fix_sign(v);
        }
        (values, vectors)
    }
}

/// Flip `v` so that its first non-negligible component is positive.
fn fix_sign(v: &mut [f64]) {
    let big = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * big) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Implicit-shift QL on `d`, `e` (with `e[n-1]` unused). Accumulates the
/// rotations into `z` (columns) when given.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [Vec<f64>]>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(format!(
                    "QL exceeded {MAX_QL_ITERATIONS} iterations at eigenvalue {l} of {n} ({l} converged)"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (left, right) = z.split_at_mut(i + 1);
                    let (zi, zi1) = (&mut left[i], &mut right[0]);
                    for k in 0..n {
                        let f = zi1[k];
                        zi1[k] = s * zi[k] + c * f;
                        zi[k] = c * zi[k] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn unit_vectors(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        })
        .collect()
}

/// All eigenpairs of a symmetric tridiagonal matrix.
pub fn eig_tridiagonal(t: &SymTridiagonal) -> Result<EigenPairs> {
    let n = t.len();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    let mut z = unit_vectors(n);
    tql(&mut d, &mut e, Some(&mut z))?;
    let (values, vectors) = EigenPairs::sorted(d, z);
    let residual_bound = values
        .iter()
        .zip(&vectors)
        .map(|(&lam, v)| {
            t.mul_vec(v)
                .iter()
                .zip(v)
                .fold(0.0_f64, |m, (a, b)| m.max((a - lam * b).abs()))
        })
        .fold(0.0, f64::max);
    Ok(EigenPairs {
        values,
        vectors,
        residual_bound,
    })
}

/// Eigenvalues only, ascending.
pub fn eigvals_tridiagonal(t: &SymTridiagonal) -> Result<Vec<f64>> {
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    tql(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

fn off_diagonal_norm(a: &SymMatrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j) * a.get(i, j);
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a dense symmetric matrix by cyclic Jacobi
/// rotations.
pub fn eig_dense_symmetric(a: &SymMatrix) -> Result<EigenPairs> {
    let asym = a.asymmetry();
    if asym > 1e-12 {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.n();
    if n == 0 {
        return Ok(EigenPairs {
            values: vec![],
            vectors: vec![],
            residual_bound: 0.0,
        });
    }
    let mut w = a.clone();
    // symmetrize exactly so the rotations see one value per pair
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (w.get(i, j) + w.get(j, i));
            w.set(i, j, v);
            w.set(j, i, v);
        }
    }
    let norm = w.frobenius();
    let mut v = unit_vectors(n);
    let target = 1e-14 * norm;
    let mut converged = norm == 0.0;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(&w) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = w.get(p, p);
                let aqq = w.get(q, q);
                if apq.abs() < 1e-18 * (app.abs() + aqq.abs()) {
                    w.set(p, q, 0.0);
                    w.set(q, p, 0.0);
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                w.set(p, p, app - t * apq);
                w.set(q, q, aqq + t * apq);
                w.set(p, q, 0.0);
                w.set(q, p, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = w.get(r, p);
                    let h = w.get(r, q);
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    w.set(r, p, rp);
                    w.set(p, r, rp);
                    w.set(r, q, rq);
                    w.set(q, r, rq);
                }
                let (left, right) = v.split_at_mut(q);
                let (vp, vq) = (&mut left[p], &mut right[0]);
                for r in 0..n {
                    let g = vp[r];
                    let h = vq[r];
                    vp[r] = g - s * (h + g * tau);
                    vq[r] = h + s * (g - h * tau);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&w) > 1e-13 * norm {
        return Err(Error::NoConvergence(format!(
            "Jacobi exceeded {MAX_JACOBI_SWEEPS} sweeps (off-diagonal norm {:e})",
            off_diagonal_norm(&w)
        )));
    }
    let values: Vec<f64> = (0..n).map(|i| w.get(i, i)).collect();
    let (values, vectors) = EigenPairs::sorted(values, v);
    let residual_bound = values
        .iter()
        .zip(&vectors)
        .map(|(&lam, x)| {
            a.mul_vec(x)
                .iter()
                .zip(x)
                .fold(0.0_f64, |m, (y, xi)| m.max((y - lam * xi).abs()))
        })
        .fold(0.0, f64::max);
    Ok(EigenPairs {
        values,
        vectors,
        residual_bound,
    })
}

/// Lower-triangular Cholesky factor `L` with `M = L L^T`, row-major.
pub fn cholesky(m: &SymMatrix) -> Result<SymMatrix> {
    let n = m.n();
    let mut l = SymMatrix::zeros(n);
    for j in 0..n {
        let mut s = m.get(j, j);
        for k in 0..j {
            s -= l.get(j, k) * l.get(j, k);
        }
        if s <= 0.0 || !s.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: j, value: s });
        }
        let ljj = s.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = m.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / ljj);
        }
    }
    Ok(l)
}

/// Solve `L x = b` in place.
fn forward_subst(l: &SymMatrix, b: &mut [f64]) {
    for i in 0..l.n() {
        let row = l.row(i);
        let s: f64 = row[..i].iter().zip(&b[..i]).map(|(a, x)| a * x).sum();
        b[i] = (b[i] - s) / row[i];
    }
}

/// Solve `L^T x = b` in place.
fn backward_subst_transpose(l: &SymMatrix, b: &mut [f64]) {
    let n = l.n();
    for i in (0..n).rev() {
        b[i] /= l.get(i, i);
        let xi = b[i];
        for k in 0..i {
            b[k] -= l.get(i, k) * xi;
        }
    }
}

/// The `k` smallest eigenpairs of `A x = lambda M x` with `M` symmetric
/// positive definite. Vectors are `M`-orthonormal.
pub fn eig_generalized(a: &SymMatrix, m: &SymMatrix, k: usize) -> Result<EigenPairs> {
    let n = a.n();
    if m.n() != n {
        return Err(Error::InvalidInput(format!(
            "matrix sizes differ: {n} and {}",
            m.n()
        )));
    }
    if k > n {
        return Err(Error::InvalidInput(format!(
            "requested {k} eigenpairs of a {n}x{n} problem"
        )));
    }
    let asym = a.asymmetry().max(m.asymmetry());
    if asym > 1e-12 {
        return Err(Error::NotSymmetric(asym));
    }
    let l = cholesky(m)?;
    // X = L^{-1} A, column by column (A symmetric so rows of A are columns)
    let mut x = SymMatrix::zeros(n);
    for j in 0..n {
        let mut col: Vec<f64> = a.row(j).to_vec();
        forward_subst(&l, &mut col);
        for i in 0..n {
            x.set(i, j, col[i]);
        }
    }
    // C = L^{-1} X^T
    let mut c = SymMatrix::zeros(n);
    for j in 0..n {
        let mut col: Vec<f64> = x.row(j).to_vec();
        forward_subst(&l, &mut col);
        for i in 0..n {
            c.set(i, j, col[i]);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (c.get(i, j) + c.get(j, i));
            c.set(i, j, v);
            c.set(j, i, v);
        }
    }
    let reduced = eig_dense_symmetric(&c)?;
    let mut values = reduced.values;
    let mut vectors = reduced.vectors;
    values.truncate(k);
    vectors.truncate(k);
    for v in &mut vectors {
        backward_subst_transpose(&l, v);
        fix_sign(v);
    }
    let residual_bound = values
        .iter()
        .zip(&vectors)
        .map(|(&lam, v)| {
            let av = a.mul_vec(v);
            let mv = m.mul_vec(v);
            av.iter()
                .zip(&mv)
                .fold(0.0_f64, |acc, (p, q)| acc.max((p - lam * q).abs()))
        })
        .fold(0.0, f64::max);
    Ok(EigenPairs {
        values,
        vectors,
        residual_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let t = SymTridiagonal::new(vec![3.5], vec![]).unwrap();
        let e = eig_tridiagonal(&t).unwrap();
        assert_eq!(e.values, vec![3.5]);
        assert_eq!(e.vectors, vec![vec![1.0]]);
    }

    #[test]
    fn pauli_x() {
        let t = SymTridiagonal::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        let e = eig_tridiagonal(&t).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.residual_bound < 1e-15);
    }

    #[test]
    fn shape_validation() {
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymMatrix::from_row_major(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn dense_identity_and_diagonal() {
        let e = eig_dense_symmetric(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        let mut d = SymMatrix::zeros(3);
        d.set(0, 0, 3.0);
        d.set(1, 1, 1.0);
        d.set(2, 2, 2.0);
        let e = eig_dense_symmetric(&d).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(e.vectors[0], vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = SymMatrix::from_row_major(2, vec![1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            eig_dense_symmetric(&m),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn generalized_scaled_pencil() {
        let mut m = SymMatrix::identity(4);
        m.set(0, 1, 0.2);
        m.set(1, 0, 0.2);
        m.set(3, 3, 3.0);
        let mut a = m.clone();
        for i in 0..4 {
            for j in 0..4 {
                a.set(i, j, 2.0 * m.get(i, j));
            }
        }
        let e = eig_generalized(&a, &m, 4).unwrap();
        assert!(e.values.iter().all(|v| (v - 2.0).abs() < 1e-13));
    }

    #[test]
    fn indefinite_mass_rejected() {
        let mut m = SymMatrix::identity(2);
        m.set(1, 1, -1.0);
        let a = SymMatrix::identity(2);
        assert!(matches!(
            eig_generalized(&a, &m, 1),
            Err(Error::NotPositiveDefinite { pivot: 1, .. })
        ));
    }
}
