//! Galerkin discretization of the Laplace-Beltrami operator of a general
//! ellipsoid in the basis of real spherical harmonics up to degree `l_max`.
//!
//! In the triaxial chart the weak form reads
//!
//! ```text
//! K_jk = int [g22 Y_j,phi Y_k,phi - g12 (Y_j,phi Y_k,theta + Y_j,theta Y_k,phi) + g11 Y_j,theta Y_k,theta] / sqrt(D)
//! M_jk = int Y_j Y_k sqrt(D)
//! ```
//!
//! over `dphi dtheta`. Integrals use Gauss-Legendre in `t = cos phi` and the
//! trapezoid rule in `theta`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::eigensolve::{eig_generalized, SymMatrix};
use crate::error::{Error, Result};
use crate::geometry::{metric_triaxial, EllipsoidSpec};
use crate::perturbation::{perturbed_spectrum, Family, ModeIndex};
use crate::special_fn::{gauss_legendre, LegendreTable};

pub const DEFAULT_L_MAX: usize = 12;

/// Real harmonics ordered by `l`, then `m`, cos before sin.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinBasis {
    pub l_max: usize,
    pub labels: Vec<ModeIndex>,
}

impl GalerkinBasis {
    pub fn new(l_max: usize) -> Self {
        let mut labels = Vec::with_capacity((l_max + 1) * (l_max + 1));
        for l in 0..=l_max {
            for m in 0..=l {
                labels.push(ModeIndex {
                    l,
                    m,
                    family: Family::Cos,
                });
                if m > 0 {
                    labels.push(ModeIndex {
                        l,
                        m,
                        family: Family::Sin,
                    });
                }
            }
        }
        Self { l_max, labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinMatrices {
    pub basis: GalerkinBasis,
    pub stiffness: SymMatrix,
    pub mass: SymMatrix,
    /// Gauss-Legendre nodes in `t`.
    pub n_t: usize,
    /// Trapezoid points in `theta`.
    pub n_theta: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending.
    pub values: Vec<f64>,
    pub l_max: usize,
    pub basis_size: usize,
    pub residual_bound: f64,
}

/// Quadrature sizes used for a given `l_max`.
pub fn quadrature_sizes(l_max: usize) -> (usize, usize) {
    (2 * (l_max + 4), 4 * (l_max + 4))
}

/// Upper triangles of the stiffness and mass contributions of one `t` node.
fn node_contribution(
    spec: &EllipsoidSpec,
    basis: &GalerkinBasis,
    t: f64,
    weight: f64,
    n_theta: usize,
) -> (Vec<f64>, Vec<f64>) {
    let nb = basis.len();
    let l_max = basis.l_max;
    let phi = t.acos();
    let sin_phi = (1.0 - t * t).sqrt();
    let table = LegendreTable::new(l_max, t);
    let mut k_acc = vec![0.0; nb * nb];
    let mut m_acc = vec![0.0; nb * nb];
    let mut y = vec![0.0; nb];
    let mut yp = vec![0.0; nb];
    let mut yt = vec![0.0; nb];
    let mut ka = vec![0.0; nb];
    let mut kb = vec![0.0; nb];
    let dtheta = 2.0 * PI / n_theta as f64;
    for j in 0..n_theta {
        let theta = j as f64 * dtheta;
        let metric = metric_triaxial(spec, phi, theta);
        let sqrt_d = metric.d.sqrt();
        let w = weight * dtheta;
        let c_mass = w * sqrt_d / sin_phi;
        let c_stiff = w / (sin_phi * sqrt_d);
        for (idx, label) in basis.labels.iter().enumerate() {
            let (p, dp) = (table.p(label.l, label.m), table.dphi(label.l, label.m));
            let mf = label.m as f64;
            let (s, c) = (mf * theta).sin_cos();
            let (f, df) = match label.family {
                Family::Cos => (c, -mf * s),
                Family::Sin => (s, mf * c),
            };
            y[idx] = p * f;
            yp[idx] = dp * f;
            yt[idx] = p * df;
        }
        for idx in 0..nb {
            ka[idx] = c_stiff * (metric.g22 * yp[idx] - metric.g12 * yt[idx]);
            kb[idx] = c_stiff * (metric.g11 * yt[idx] - metric.g12 * yp[idx]);
        }
        for r in 0..nb {
            let (mr, ar, br) = (c_mass * y[r], ka[r], kb[r]);
            let row = r * nb;
            for col in r..nb {
                m_acc[row + col] += mr * y[col];
                k_acc[row + col] += ar * yp[col] + br * yt[col];
            }
        }
    }
    (k_acc, m_acc)
}

/// Stiffness and mass matrices over all real harmonics of degree `<= l_max`.
pub fn assemble_galerkin(spec: &EllipsoidSpec, l_max: usize) -> Result<GalerkinMatrices> {
    if l_max < 2 {
        return Err(Error::InvalidInput(format!(
            "l_max must be >= 2, got {l_max}"
        )));
    }
    let basis = GalerkinBasis::new(l_max);
    let nb = basis.len();
    let (n_t, n_theta) = quadrature_sizes(l_max);
    let rule = gauss_legendre(n_t);
    let parts: Vec<(Vec<f64>, Vec<f64>)> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&t, &w)| node_contribution(spec, &basis, t, w, n_theta))
        .collect();
    // fixed summation order keeps results independent of the thread count
    let mut k = vec![0.0; nb * nb];
    let mut m = vec![0.0; nb * nb];
    for (kp, mp) in &parts {
        for (acc, v) in k.iter_mut().zip(kp) {
            *acc += v;
        }
        for (acc, v) in m.iter_mut().zip(mp) {
            *acc += v;
        }
    }
    for r in 0..nb {
        for c in 0..r {
            k[r * nb + c] = k[c * nb + r];
            m[r * nb + c] = m[c * nb + r];
        }
    }
    Ok(GalerkinMatrices {
        basis,
        stiffness: SymMatrix::from_row_major(nb, k)?,
        mass: SymMatrix::from_row_major(nb, m)?,
        n_t,
        n_theta,
    })
}

/// All eigenvalues of the assembled pencil, ascending.
fn full_spectrum(mats: &GalerkinMatrices) -> Result<SpectrumResult> {
    let nb = mats.basis.len();
    let pairs = eig_generalized(&mats.stiffness, &mats.mass, nb)?;
    Ok(SpectrumResult {
        values: pairs.values,
        l_max: mats.basis.l_max,
        basis_size: nb,
        residual_bound: pairs.residual_bound,
    })
}

/// The `k` smallest eigenvalues. Only the lower half of the Galerkin
/// spectrum is resolved, so `k <= (l_max + 1)^2 / 2`.
pub fn solve_triaxial(spec: &EllipsoidSpec, l_max: usize, k: usize) -> Result<SpectrumResult> {
    let nb = (l_max + 1) * (l_max + 1);
    if k > nb / 2 {
        return Err(Error::InvalidInput(format!(
            "k = {k} exceeds the resolved half of the basis ({})",
            nb / 2
        )));
    }
    let mats = assemble_galerkin(spec, l_max)?;
    let mut result = full_spectrum(&mats)?;
    result.values.truncate(k);
    Ok(result)
}

/// Half-open eigenvalue window `[l^2, (l+1)^2)` of level `l`: its ends are
/// the midpoints between `l(l+1)` and the neighbouring levels.
pub fn level_window(l: usize) -> (f64, f64) {
    ((l * l) as f64, ((l + 1) * (l + 1)) as f64)
}

/// The `2l + 1` eigenvalues of level `l` from an ascending spectrum.
pub fn level_cluster(values: &[f64], l: usize) -> Result<Vec<f64>> {
    let (lo, hi) = level_window(l);
    let cluster: Vec<f64> = values
        .iter()
        .copied()
        .filter(|&v| v >= lo && v < hi)
        .collect();
    if cluster.len() != 2 * l + 1 {
        let mut neighbours = vec![l + 1];
        if l > 0 {
            neighbours.insert(0, l - 1);
        }
        return Err(Error::ClusterOverlap {
            level: l,
            found: cluster.len(),
            expected: 2 * l + 1,
            neighbours,
        });
    }
    Ok(cluster)
}

/// Polynomial extrapolation of `(x_i, y_i)` to `x = 0` (Neville).
pub fn extrapolate_to_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = x.len();
    for width in 1..n {
        for i in 0..n - width {
            let j = i + width;
            p[i] = (x[i] * p[i + 1] - x[j] * p[i]) / (x[i] - x[j]);
        }
    }
    p[0]
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeTable {
    pub l: usize,
    pub eps: Vec<f64>,
    /// Level-`l` eigenvalues per `eps`, ascending.
    pub numeric: Vec<Vec<f64>>,
    /// `(Lambda - l(l+1)) / eps` per `eps`.
    pub slopes: Vec<Vec<f64>>,
    /// Slopes extrapolated to `eps = 0` over all `eps`; empty for a single `eps`.
    pub extrapolated: Vec<f64>,
    /// Closed-form corrections, ascending.
    pub exact: Vec<f64>,
}

/// Difference quotients of level `l` for the family
/// `(1 + alpha eps, 1 + beta eps, 1 + gamma eps)` over `eps_list`.
pub fn slope_extraction(
    alpha: f64,
    beta: f64,
    gamma: f64,
    eps_list: &[f64],
    l: usize,
    l_max: usize,
) -> Result<SlopeTable> {
    if l + 2 > l_max {
        return Err(Error::InvalidInput(format!(
            "level {l} is not resolved by l_max = {l_max}"
        )));
    }
    if eps_list.iter().any(|&e| e <= 0.0) {
        return Err(Error::InvalidInput("slopes need eps > 0".into()));
    }
    let lambda0 = (l * (l + 1)) as f64;
    let numeric: Vec<Vec<f64>> = eps_list
        .iter()
        .map(|&eps| {
            let spec = EllipsoidSpec::from_perturbation(alpha, beta, gamma, eps)?;
            let mats = assemble_galerkin(&spec, l_max)?;
            level_cluster(&full_spectrum(&mats)?.values, l)
        })
        .collect::<Result<_>>()?;
    let slopes: Vec<Vec<f64>> = numeric
        .iter()
        .zip(eps_list)
        .map(|(vals, &eps)| vals.iter().map(|v| (v - lambda0) / eps).collect())
        .collect();
    let extrapolated = if eps_list.len() >= 2 {
        (0..=2 * l)
            .map(|r| {
                let ys: Vec<f64> = slopes.iter().map(|s| s[r]).collect();
                extrapolate_to_zero(eps_list, &ys)
            })
            .collect()
    } else {
        Vec::new()
    };
    let exact = perturbed_spectrum(l, alpha, beta, gamma)?
        .iter()
        .map(|r| r.lambda1)
        .collect();
    Ok(SlopeTable {
        l,
        eps: eps_list.to_vec(),
        numeric,
        slopes,
        extrapolated,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_size_and_order() {
        let b = GalerkinBasis::new(3);
        assert_eq!(b.len(), 16);
        assert_eq!(
            b.labels[0],
            ModeIndex {
                l: 0,
                m: 0,
                family: Family::Cos
            }
        );
        assert_eq!(
            b.labels[3],
            ModeIndex {
                l: 1,
                m: 1,
                family: Family::Sin
            }
        );
    }

    #[test]
    fn neville_recovers_polynomial() {
        let x = [0.1, 0.05, 0.025];
        let y: Vec<f64> = x.iter().map(|e| 3.0 - 2.0 * e + 7.0 * e * e).collect();
        assert!((extrapolate_to_zero(&x, &y) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_matrices_are_diagonal() {
        let mats = assemble_galerkin(&EllipsoidSpec::sphere(), 4).unwrap();
        let nb = mats.basis.len();
        for i in 0..nb {
            let l = mats.basis.labels[i].l as f64;
            for j in 0..nb {
                let (ke, me) = if i == j {
                    (l * (l + 1.0), 1.0)
                } else {
                    (0.0, 0.0)
                };
                assert!((mats.stiffness.get(i, j) - ke).abs() < 1e-12);
                assert!((mats.mass.get(i, j) - me).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_too_many_values() {
        assert!(solve_triaxial(&EllipsoidSpec::sphere(), 4, 20).is_err());
        assert!(assemble_galerkin(&EllipsoidSpec::sphere(), 1).is_err());
    }

    #[test]
    fn window_mismatch_reports_levels() {
        let err = level_cluster(&[0.0, 2.0, 2.0], 1).unwrap_err();
        assert!(matches!(
            err,
            Error::ClusterOverlap {
                level: 1,
                found: 2,
                ..
            }
        ));
    }
}
