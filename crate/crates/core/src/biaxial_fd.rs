//! Finite differences for an ellipsoid of revolution, one azimuthal mode at a
//! time.
//!
//! For `u = v(phi) cos(m theta)` on the surface
//! `(a sin phi cos theta, a sin phi sin theta, b cos phi)` the eigenproblem
//! reduces to the Sturm-Liouville form
//!
//! ```text
//! -(p v')' + (m^2 / p) v = Lambda w v,   p = a sin(phi) / sqrt(g11),   w = a sin(phi) sqrt(g11)
//! ```
//!
//! with `g11 = a^2 cos^2 phi + b^2 sin^2 phi`. It is discretized on the vertex
//! grid `phi_j = j pi / N` with fluxes at half points and lumped weights, then
//! symmetrized by the diagonal similarity `W^{-1/2}`.

use crate::eigensolve::{eig_tridiagonal, eigvals_tridiagonal, SymTridiagonal};
use crate::error::{Error, Result};
use crate::geometry::{metric_biaxial, EllipsoidSpec};

pub const DEFAULT_N: usize = 400;
pub const DEFAULT_K: usize = 10;

/// Treatment of the two pole nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PoleBc {
    /// Half-cell pole rows with zero flux through the pole for every `m`.
    Neumann,
    /// Neumann for `m = 0`; for `m >= 1` the pole rows are dropped, which pins
    /// the eigenfunction to zero there.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FdGrid {
    pub n: usize,
}

impl FdGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::InvalidInput(format!("grid needs N >= 16, got {n}")));
        }
        Ok(Self { n })
    }

    pub fn h(&self) -> f64 {
        std::f64::consts::PI / self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.h()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiaxialEigenResult {
    pub m: usize,
    pub values: Vec<f64>,
    pub grid: FdGrid,
    /// Eigenfunction samples at `phi_0..=phi_N`, normalized in the discrete
    /// weighted norm; empty when only values were requested.
    pub eigvecs: Vec<Vec<f64>>,
}

/// Ellipsoid of revolution given by its equatorial (`a`) and polar (`b`)
/// radii.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Revolution {
    a: f64,
    b: f64,
}

impl Revolution {
    fn from_spec(spec: &EllipsoidSpec) -> Result<Self> {
        let (a, b) = spec.biaxial_radii().ok_or_else(|| {
            Error::InvalidInput(format!(
                "finite differences need two equal semi-axes, got {:?}",
                spec.axes()
            ))
        })?;
        Ok(Self { a, b })
    }

    fn g11(&self, phi: f64) -> f64 {
        metric_biaxial(self.a, self.b, phi).g11
    }

    fn p(&self, phi: f64) -> f64 {
        self.a * phi.sin() / self.g11(phi).sqrt()
    }

    fn w(&self, phi: f64) -> f64 {
        self.a * phi.sin() * self.g11(phi).sqrt()
    }
}

/// Symmetric tridiagonal system and the weights needed to map eigenvectors
/// back, plus the grid index of its first row.
struct Assembled {
    matrix: SymTridiagonal,
    inv_sqrt_w: Vec<f64>,
    first: usize,
}

fn assemble(shape: Revolution, m: usize, grid: FdGrid, bc: PoleBc) -> Result<Assembled> {
    let n = grid.n;
    let h = grid.h();
    let m2 = (m * m) as f64;
    let flux: Vec<f64> = (0..n).map(|j| shape.p(grid.node(j) + 0.5 * h)).collect();
    let mut diag = vec![0.0; n + 1];
    let mut off = vec![0.0; n];
    let mut weight = vec![0.0; n + 1];
    for j in 0..=n {
        if j > 0 {
            diag[j] += flux[j - 1] / h;
        }
        if j < n {
            diag[j] += flux[j] / h;
            off[j] = -flux[j] / h;
        }
        if j == 0 || j == n {
            // half cell around the pole, where w ~ a^2 phi
            weight[j] = shape.a * shape.a * h * h / 8.0;
            if m > 0 {
                diag[j] += m2 / shape.p(0.5 * h) * 0.5 * h;
            }
        } else {
            weight[j] = shape.w(grid.node(j)) * h;
            diag[j] += m2 / shape.p(grid.node(j)) * h;
        }
    }
    let (lo, hi) = if bc == PoleBc::Auto && m > 0 {
        (1, n)
    } else {
        (0, n + 1)
    };
    let s: Vec<f64> = weight[lo..hi].iter().map(|w| 1.0 / w.sqrt()).collect();
    let d: Vec<f64> = diag[lo..hi]
        .iter()
        .zip(&s)
        .map(|(d, s)| d * s * s)
        .collect();
    let o: Vec<f64> = off[lo..hi - 1]
        .iter()
        .enumerate()
        .map(|(i, o)| o * s[i] * s[i + 1])
        .collect();
    Ok(Assembled {
        matrix: SymTridiagonal::new(d, o)?,
        inv_sqrt_w: s,
        first: lo,
    })
}

/// The `k` smallest eigenvalues (and eigenfunctions) of mode `m` on the
/// ellipsoid of revolution `spec`, which must have two equal semi-axes.
pub fn solve_biaxial_fd(
    spec: &EllipsoidSpec,
    m: usize,
    n: usize,
    k: usize,
    bc: PoleBc,
) -> Result<BiaxialEigenResult> {
    let grid = FdGrid::new(n)?;
    let shape = Revolution::from_spec(spec)?;
    let sys = assemble(shape, m, grid, bc)?;
    let pairs = eig_tridiagonal(&sys.matrix)?;
    let k = k.min(pairs.values.len());
    let eigvecs = pairs.vectors[..k]
        .iter()
        .map(|y| {
            let mut v = vec![0.0; n + 1];
            for (i, (yi, si)) in y.iter().zip(&sys.inv_sqrt_w).enumerate() {
                v[sys.first + i] = yi * si;
            }
            v
        })
        .collect();
    Ok(BiaxialEigenResult {
        m,
        values: pairs.values[..k].to_vec(),
        grid,
        eigvecs,
    })
}

/// Eigenvalues only; cheaper than [`solve_biaxial_fd`] for sweeps.
pub fn eigenvalues_biaxial_fd(
    spec: &EllipsoidSpec,
    m: usize,
    n: usize,
    k: usize,
    bc: PoleBc,
) -> Result<Vec<f64>> {
    let grid = FdGrid::new(n)?;
    let shape = Revolution::from_spec(spec)?;
    let sys = assemble(shape, m, grid, bc)?;
    let mut values = eigvals_tridiagonal(&sys.matrix)?;
    values.truncate(k);
    Ok(values)
}

/// One grid of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub values: Vec<f64>,
    /// Observed order per eigenvalue from this grid and the two coarser ones;
    /// `None` for the first two rows.
    pub order: Option<Vec<f64>>,
}

/// Solve on every grid of `n_list` (ascending) and estimate the observed
/// order `log(|e1| / |e2|) / log(N2 / N1)` from consecutive differences.
pub fn convergence_study(
    spec: &EllipsoidSpec,
    m: usize,
    n_list: &[usize],
    k: usize,
    bc: PoleBc,
) -> Result<Vec<ConvergenceRow>> {
    if n_list.len() < 2 || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "convergence study needs at least two ascending grid sizes".into(),
        ));
    }
    let solved: Vec<Vec<f64>> = n_list
        .iter()
        .map(|&n| eigenvalues_biaxial_fd(spec, m, n, k, bc))
        .collect::<Result<_>>()?;
    Ok(n_list
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let order = (i >= 2).then(|| {
                let ratio = (n_list[i - 1] as f64 / n_list[i - 2] as f64).ln();
                (0..k.min(solved[i].len()))
                    .map(|j| {
                        let e1 = (solved[i - 1][j] - solved[i - 2][j]).abs();
                        let e2 = (solved[i][j] - solved[i - 1][j]).abs();
                        (e1 / e2).ln() / ratio
                    })
                    .collect()
            });
            ConvergenceRow {
                n,
                values: solved[i].clone(),
                order,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_m0() {
        let r = solve_biaxial_fd(&EllipsoidSpec::sphere(), 0, 400, 3, PoleBc::Auto).unwrap();
        assert!(r.values[0].abs() < 1e-10);
        assert!((r.values[1] - 2.0).abs() < 1e-3);
        assert!((r.values[2] - 6.0).abs() < 1e-3);
    }

    #[test]
    fn symmetric_and_constant_mode() {
        let spec = EllipsoidSpec::from_axes(1.0, 1.0, 1.3).unwrap();
        let sys = assemble(
            Revolution::from_spec(&spec).unwrap(),
            0,
            FdGrid::new(64).unwrap(),
            PoleBc::Auto,
        )
        .unwrap();
        // row sums of the unweighted operator vanish, so sqrt(W) is a null vector
        let w_half: Vec<f64> = sys.inv_sqrt_w.iter().map(|s| 1.0 / s).collect();
        let y = sys.matrix.mul_vec(&w_half);
        let scale = w_half.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        assert!(y.iter().all(|v| v.abs() < 1e-12 * scale.max(1.0) * 64.0));
    }

    #[test]
    fn needs_revolution_and_grid() {
        let tri = EllipsoidSpec::from_axes(1.0, 1.1, 1.2).unwrap();
        assert!(solve_biaxial_fd(&tri, 0, 100, 3, PoleBc::Auto).is_err());
        assert!(solve_biaxial_fd(&EllipsoidSpec::sphere(), 0, 8, 3, PoleBc::Auto).is_err());
    }

    #[test]
    fn eigenvector_pinned_at_poles_for_auto() {
        let spec = EllipsoidSpec::from_axes(1.0, 1.0, 1.1).unwrap();
        let r = solve_biaxial_fd(&spec, 2, 100, 2, PoleBc::Auto).unwrap();
        assert_eq!(r.eigvecs[0][0], 0.0);
        assert_eq!(r.eigvecs[0][100], 0.0);
    }
}
