//! Nodal domains of first-order eigenfunctions `u = sum_k c_k Y_k` on the
//! sphere.
//!
//! Samples lie on a `(phi, theta)` grid whose first and last rows are the
//! poles; each pole row is one logical cell. `theta` samples are offset by
//! half a cell. A sample is treated as nodal when the zero set can pass within
//! one grid step of it, judged from the analytic gradient:
//! `|u| <= |u_phi| dphi + |u_theta| dtheta`. This keeps two sign regions that
//! touch only at a crossing of nodal lines from being joined by the
//! discrete adjacency. Remaining samples are joined with 4-adjacency, across
//! the `theta` seam and through the pole cells.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perturbation::{perturbed_spectrum, Family, ModeIndex, PerturbedEigenvalue};
use crate::special_fn::LegendreTable;

pub const DEFAULT_N_PHI: usize = 800;
pub const DEFAULT_N_THETA: usize = 1600;

/// Relative size below which a pole value counts as zero.
const POLE_ZERO: f64 = 1e-12;

/// Samples of a function on the sphere together with its partial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    pub n_phi: usize,
    pub n_theta: usize,
    /// Row-major, `n_phi x n_theta`.
    pub values: Vec<f64>,
    pub grad_phi: Vec<f64>,
    pub grad_theta: Vec<f64>,
}

fn check_dims(n_phi: usize, n_theta: usize) -> Result<()> {
    if n_phi < 4 || n_theta < 4 {
        return Err(Error::InvalidInput(format!(
            "grid must be at least 4 x 4, got {n_phi} x {n_theta}"
        )));
    }
    Ok(())
}

pub fn grid_phi(i: usize, n_phi: usize) -> f64 {
    PI * i as f64 / (n_phi - 1) as f64
}

pub fn grid_theta(j: usize, n_theta: usize) -> f64 {
    2.0 * PI * (j as f64 + 0.5) / n_theta as f64
}

impl SphereGrid {
    /// Sample `f(phi, theta) -> (u, u_phi, u_theta)`.
    pub fn from_fn(
        n_phi: usize,
        n_theta: usize,
        f: impl Fn(f64, f64) -> (f64, f64, f64) + Sync,
    ) -> Result<Self> {
        check_dims(n_phi, n_theta)?;
        let rows: Vec<Vec<(f64, f64, f64)>> = (0..n_phi)
            .into_par_iter()
            .map(|i| {
                let phi = grid_phi(i, n_phi);
                (0..n_theta)
                    .map(|j| f(phi, grid_theta(j, n_theta)))
                    .collect()
            })
            .collect();
        let mut grid = Self {
            n_phi,
            n_theta,
            values: Vec::with_capacity(n_phi * n_theta),
            grad_phi: Vec::with_capacity(n_phi * n_theta),
            grad_theta: Vec::with_capacity(n_phi * n_theta),
        };
        for (u, up, ut) in rows.into_iter().flatten() {
            grid.values.push(u);
            grid.grad_phi.push(up);
            grid.grad_theta.push(ut);
        }
        Ok(grid)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Evaluates `sum_k c_k Y_k` and its first derivatives row by row.
struct ModeFunction<'a> {
    modes: &'a [ModeIndex],
    coeffs: &'a [f64],
    l_max: usize,
    /// `(f, f')` of each mode at every `theta` sample.
    trig: Vec<Vec<(f64, f64)>>,
}

impl<'a> ModeFunction<'a> {
    fn new(modes: &'a [ModeIndex], coeffs: &'a [f64], n_theta: usize) -> Result<Self> {
        if modes.is_empty() || modes.len() != coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "{} modes with {} coefficients",
                modes.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidInput("zero coefficient vector".into()));
        }
        for mode in modes {
            ModeIndex::new(mode.l, mode.m, mode.family)?;
        }
        let trig = modes
            .iter()
            .map(|mode| {
                let mf = mode.m as f64;
                (0..n_theta)
                    .map(|j| {
                        let (s, c) = (mf * grid_theta(j, n_theta)).sin_cos();
                        match mode.family {
                            Family::Cos => (c, -mf * s),
                            Family::Sin => (s, mf * c),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            modes,
            coeffs,
            l_max: modes.iter().map(|m| m.l).max().unwrap_or(0),
            trig,
        })
    }

    /// Values, `phi`- and `theta`-derivatives along row `phi`.
    fn row(&self, phi: f64, n_theta: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let table = LegendreTable::new(self.l_max, phi.cos());
        let mut u = vec![0.0; n_theta];
        let mut up = vec![0.0; n_theta];
        let mut ut = vec![0.0; n_theta];
        for ((mode, &c), trig) in self.modes.iter().zip(self.coeffs).zip(&self.trig) {
            let p = c * table.p(mode.l, mode.m);
            let dp = c * table.dphi(mode.l, mode.m);
            for (j, &(f, df)) in trig.iter().enumerate() {
                u[j] += p * f;
                up[j] += dp * f;
                ut[j] += p * df;
            }
        }
        (u, up, ut)
    }
}

/// Samples of `u = sum_k coeffs[k] * Y_{modes[k]}`.
pub fn eval_mode_function(
    modes: &[ModeIndex],
    coeffs: &[f64],
    n_phi: usize,
    n_theta: usize,
) -> Result<SphereGrid> {
    check_dims(n_phi, n_theta)?;
    let f = ModeFunction::new(modes, coeffs, n_theta)?;
    let rows: Vec<_> = (0..n_phi)
        .into_par_iter()
        .map(|i| f.row(grid_phi(i, n_phi), n_theta))
        .collect();
    let mut grid = SphereGrid {
        n_phi,
        n_theta,
        values: Vec::with_capacity(n_phi * n_theta),
        grad_phi: Vec::with_capacity(n_phi * n_theta),
        grad_theta: Vec::with_capacity(n_phi * n_theta),
    };
    for (u, up, ut) in rows {
        grid.values.extend(u);
        grid.grad_phi.extend(up);
        grid.grad_theta.extend(ut);
    }
    Ok(grid)
}

/// Sign classification: `+1`, `-1`, or `0` for nodal samples. Pole rows are
/// uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignGrid {
    pub n_phi: usize,
    pub n_theta: usize,
    pub signs: Vec<i8>,
}

fn classify(u: f64, up: f64, ut: f64, dphi: f64, dtheta: f64) -> i8 {
    let band = up.abs() * dphi + ut.abs() * dtheta;
    if u.abs() <= band {
        0
    } else if u > 0.0 {
        1
    } else {
        -1
    }
}

fn pole_sign(u: f64, max_abs: f64) -> i8 {
    if u.abs() <= POLE_ZERO * max_abs {
        0
    } else if u > 0.0 {
        1
    } else {
        -1
    }
}

impl SignGrid {
    pub fn from_grid(grid: &SphereGrid) -> Self {
        let (n_phi, n_theta) = (grid.n_phi, grid.n_theta);
        let dphi = PI / (n_phi - 1) as f64;
        let dtheta = 2.0 * PI / n_theta as f64;
        let max_abs = grid.max_abs();
        let mut signs: Vec<i8> = (0..n_phi * n_theta)
            .map(|k| {
                classify(
                    grid.values[k],
                    grid.grad_phi[k],
                    grid.grad_theta[k],
                    dphi,
                    dtheta,
                )
            })
            .collect();
        for row in [0, n_phi - 1] {
            let s = pole_sign(grid.values[row * n_theta], max_abs);
            signs[row * n_theta..(row + 1) * n_theta].fill(s);
        }
        Self {
            n_phi,
            n_theta,
            signs,
        }
    }

    /// Classify `sum_k coeffs[k] Y_k` directly without keeping the samples.
    pub fn from_modes(
        modes: &[ModeIndex],
        coeffs: &[f64],
        n_phi: usize,
        n_theta: usize,
    ) -> Result<Self> {
        check_dims(n_phi, n_theta)?;
        let f = ModeFunction::new(modes, coeffs, n_theta)?;
        let dphi = PI / (n_phi - 1) as f64;
        let dtheta = 2.0 * PI / n_theta as f64;
        let rows: Vec<(Vec<i8>, f64, f64)> = (0..n_phi)
            .into_par_iter()
            .map(|i| {
                let (u, up, ut) = f.row(grid_phi(i, n_phi), n_theta);
                let max = u.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                let signs = (0..n_theta)
                    .map(|j| classify(u[j], up[j], ut[j], dphi, dtheta))
                    .collect();
                (signs, max, u[0])
            })
            .collect();
        let max_abs = rows.iter().fold(0.0_f64, |m, r| m.max(r.1));
        let mut signs = Vec::with_capacity(n_phi * n_theta);
        let last = rows.len() - 1;
        for (i, (row, _, first)) in rows.into_iter().enumerate() {
            if i == 0 || i == last {
                signs.extend(std::iter::repeat(pole_sign(first, max_abs)).take(n_theta));
            } else {
                signs.extend(row);
            }
        }
        Ok(Self {
            n_phi,
            n_theta,
            signs,
        })
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n_theta + j]
    }

    /// Binary portable graymap: white positive, black negative, grey nodal.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.n_theta, self.n_phi).into_bytes();
        out.extend(self.signs.iter().map(|&s| match s {
            1 => 255u8,
            -1 => 0,
            _ => 128,
        }));
        out
    }
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let grand = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = grand;
            i = grand;
        }
        i
    }

    fn merge(&mut self, i: u32, j: u32) {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Connected components of the nonzero cells of a sign grid.
pub fn count_sign_components(grid: &SignGrid) -> usize {
    let (n_phi, n_theta) = (grid.n_phi, grid.n_theta);
    let interior = n_phi - 2;
    let north = (interior * n_theta) as u32;
    let south = north + 1;
    let id = |i: usize, j: usize| ((i - 1) * n_theta + j) as u32;
    let mut sets = DisjointSets::new(interior * n_theta + 2);
    for i in 1..=interior {
        for j in 0..n_theta {
            let s = grid.at(i, j);
            if s == 0 {
                continue;
            }
            let right = (j + 1) % n_theta;
            if grid.at(i, right) == s {
                sets.merge(id(i, j), id(i, right));
            }
            if i < interior && grid.at(i + 1, j) == s {
                sets.merge(id(i, j), id(i + 1, j));
            }
            if i == 1 && grid.at(0, 0) == s {
                sets.merge(id(i, j), north);
            }
            if i == interior && grid.at(n_phi - 1, 0) == s {
                sets.merge(id(i, j), south);
            }
        }
    }
    let mut roots = std::collections::HashSet::new();
    for i in 1..=interior {
        for j in 0..n_theta {
            if grid.at(i, j) != 0 {
                roots.insert(sets.find(id(i, j)));
            }
        }
    }
    if grid.at(0, 0) != 0 {
        roots.insert(sets.find(north));
    }
    if grid.at(n_phi - 1, 0) != 0 {
        roots.insert(sets.find(south));
    }
    roots.len()
}

/// Number of nodal domains of the sampled function.
pub fn count_nodal_domains(grid: &SphereGrid) -> usize {
    count_sign_components(&SignGrid::from_grid(grid))
}

/// Count at a base resolution and at twice that resolution in both
/// directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodalCount {
    pub count: usize,
    pub refined_count: usize,
}

impl NodalCount {
    /// The two resolutions disagree.
    pub fn suspect(&self) -> bool {
        self.count != self.refined_count
    }
}

pub fn count_nodal_checked(
    modes: &[ModeIndex],
    coeffs: &[f64],
    n_phi: usize,
    n_theta: usize,
) -> Result<NodalCount> {
    let count = count_sign_components(&SignGrid::from_modes(modes, coeffs, n_phi, n_theta)?);
    let refined_count = count_sign_components(&SignGrid::from_modes(
        modes,
        coeffs,
        2 * n_phi,
        2 * n_theta,
    )?);
    Ok(NodalCount {
        count,
        refined_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeCase {
    /// Two equal axes longer than the third.
    Oblate,
    /// Two equal axes shorter than the third.
    Prolate,
    Triaxial,
}

/// Conjectured nodal counts of the `2l + 1` first-order eigenfunctions of
/// level `l`, in ascending order of the correction.
///
/// With `N_0 = l + 1` and `N_{2m-1} = N_{2m} = 2m (l + 1 - m)`, a prolate
/// ellipsoid gives `N_0, ..., N_{2l}` and an oblate one the reverse. For three
/// distinct axes the even entries `N_{2m}`, `1 <= m < l`, drop by `2(m-1)`
/// and the last entry is `l + 1`.
pub fn conjecture_sequences(l: usize, case: ShapeCase) -> Vec<usize> {
    let mut n = vec![l + 1];
    for m in 1..=l {
        let v = 2 * m * (l + 1 - m);
        n.push(v);
        n.push(v);
    }
    match case {
        ShapeCase::Prolate => n,
        ShapeCase::Oblate => n.into_iter().rev().collect(),
        ShapeCase::Triaxial => {
            for m in 1..l {
                n[2 * m] -= 2 * (m - 1);
            }
            if l > 0 {
                n[2 * l] = l + 1;
            }
            n
        }
    }
}

/// Shape case and the parameters after moving a distinguished axis to `c`.
///
/// For two equal parameters the triple is reordered to `(pair, pair,
/// distinguished)`, which keeps the first-order eigenfunctions pure
/// harmonics about the symmetry axis; three distinct parameters are kept.
pub fn classify_case(alpha: f64, beta: f64, gamma: f64) -> Result<(ShapeCase, [f64; 3])> {
    if alpha == beta && beta == gamma {
        return Err(Error::InvalidInput(
            "a sphere rescaling has no first-order splitting".into(),
        ));
    }
    let (pair, distinguished) = if alpha == beta {
        (alpha, gamma)
    } else if alpha == gamma {
        (alpha, beta)
    } else if beta == gamma {
        (beta, alpha)
    } else {
        return Ok((ShapeCase::Triaxial, [alpha, beta, gamma]));
    };
    let case = if distinguished > pair {
        ShapeCase::Prolate
    } else {
        ShapeCase::Oblate
    };
    Ok((case, [pair, pair, distinguished]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    pub lambda1: f64,
    pub count: NodalCount,
    pub expected: usize,
    /// Entry-wise for simple values; for a cluster, whether the multiset of
    /// counts over the cluster equals the expected multiset.
    pub matches: bool,
    /// Position of the eigenvalue in the full spectrum (1-based, first index
    /// of its cluster).
    pub courant_bound: usize,
    pub courant_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureCheck {
    pub case: ShapeCase,
    /// Parameters actually used after relabeling.
    pub params: [f64; 3],
    pub l: usize,
    pub ranks: Vec<RankResult>,
}

impl ConjectureCheck {
    pub fn all_match(&self) -> bool {
        self.ranks.iter().all(|r| r.matches)
    }

    pub fn courant_ok(&self) -> bool {
        self.ranks.iter().all(|r| r.courant_ok)
    }

    pub fn any_suspect(&self) -> bool {
        self.ranks.iter().any(|r| r.count.suspect())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.ranks.iter().map(|r| r.count.count).collect()
    }
}

fn rank_results(
    l: usize,
    spectrum: &[PerturbedEigenvalue],
    counts: &[NodalCount],
    expected: &[usize],
) -> Vec<RankResult> {
    let mut results = Vec::with_capacity(spectrum.len());
    for (rank, rec) in spectrum.iter().enumerate() {
        let members: Vec<usize> = (0..spectrum.len())
            .filter(|&k| spectrum[k].cluster == rec.cluster)
            .collect();
        let first = members[0];
        let matches = if members.len() == 1 {
            counts[rank].count == expected[rank]
        } else {
            let mut got: Vec<usize> = members.iter().map(|&k| counts[k].count).collect();
            let mut want: Vec<usize> = members.iter().map(|&k| expected[k]).collect();
            got.sort_unstable();
            want.sort_unstable();
            got == want
        };
        let courant_bound = l * l + first + 1;
        results.push(RankResult {
            rank,
            lambda1: rec.lambda1,
            count: counts[rank],
            expected: expected[rank],
            matches,
            courant_bound,
            courant_ok: counts[rank].count <= courant_bound,
        });
    }
    results
}

/// Count the nodal domains of every first-order eigenfunction of level `l`
/// and compare with [`conjecture_sequences`].
pub fn check_conjecture(
    alpha: f64,
    beta: f64,
    gamma: f64,
    l: usize,
    n_phi: usize,
    n_theta: usize,
) -> Result<ConjectureCheck> {
    let (case, params) = classify_case(alpha, beta, gamma)?;
    let spectrum = perturbed_spectrum(l, params[0], params[1], params[2])?;
    let counts: Vec<NodalCount> = spectrum
        .iter()
        .map(|rec| count_nodal_checked(&rec.modes, &rec.eigvec, n_phi, n_theta))
        .collect::<Result<_>>()?;
    let expected = conjecture_sequences(l, case);
    Ok(ConjectureCheck {
        case,
        params,
        l,
        ranks: rank_results(l, &spectrum, &counts, &expected),
    })
}
