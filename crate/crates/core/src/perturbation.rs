//! First-order eigenvalue corrections `Lambda = l(l+1) + eps Lambda_1 + O(eps^2)`
//! for `a = 1 + alpha eps`, `b = 1 + beta eps`, `c = 1 + gamma eps`.
//!
//! Inside the level `l(l+1)` the first-order operator couples the real
//! harmonics `v_m = cos(m theta) P_l^m(cos phi)` and `w_m = sin(m theta) P_l^m`
//! only to `m +- 2` of the same family, so the `(2l+1)`-dimensional problem
//! splits into four symmetric tridiagonal blocks.

use crate::eigensolve::{eig_tridiagonal, SymTridiagonal};
use crate::error::{Error, Result};

/// Relative tolerance below which two corrections form one cluster.
pub const TAU_MULT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cos,
    Sin,
}

/// Real spherical harmonic `v_m` (cos) or `w_m` (sin) of degree `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub l: usize,
    pub m: usize,
    pub family: Family,
}

impl ModeIndex {
    pub fn new(l: usize, m: usize, family: Family) -> Result<Self> {
        if m > l || (family == Family::Sin && m == 0) {
            return Err(Error::InvalidMode {
                l: l as i64,
                m: m as i64,
            });
        }
        Ok(Self { l, m, family })
    }

    pub fn parity(&self) -> usize {
        self.m % 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    CosEven,
    CosOdd,
    SinEven,
    SinOdd,
}

impl BlockKind {
    pub const ALL: [BlockKind; 4] = [
        BlockKind::CosEven,
        BlockKind::CosOdd,
        BlockKind::SinEven,
        BlockKind::SinOdd,
    ];

    pub fn family(self) -> Family {
        match self {
            BlockKind::CosEven | BlockKind::CosOdd => Family::Cos,
            BlockKind::SinEven | BlockKind::SinOdd => Family::Sin,
        }
    }

    fn first_m(self) -> usize {
        match self {
            BlockKind::CosEven => 0,
            BlockKind::CosOdd | BlockKind::SinOdd => 1,
            BlockKind::SinEven => 2,
        }
    }
}

/// One of the four blocks, already negated so that its eigenvalues are the
/// corrections `Lambda_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalBlock {
    pub which: BlockKind,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub mode_labels: Vec<ModeIndex>,
}

/// Where a perturbed eigenvalue came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Block(BlockKind),
    BiaxialClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedEigenvalue {
    /// `l(l+1)`.
    pub lambda0: f64,
    pub lambda1: f64,
    /// Size of the cluster this value belongs to.
    pub multiplicity: usize,
    /// Index of that cluster within the level, counting from 0 in ascending order.
    pub cluster: usize,
    /// Unit coefficients over `modes`.
    pub eigvec: Vec<f64>,
    pub modes: Vec<ModeIndex>,
    pub source: Source,
}

fn level(l: usize) -> f64 {
    (l * (l + 1)) as f64
}

fn check_mode(l: i64, m: i64) -> Result<()> {
    if l < 0 || m.abs() > l {
        return Err(Error::InvalidMode { l, m });
    }
    Ok(())
}

/// Closed-form correction for the ellipsoid of revolution with pair
/// `1 + alpha eps` and distinguished axis `1 + beta eps`.
pub fn biaxial_lambda1(l: i64, m: i64, alpha: f64, beta: f64) -> Result<f64> {
    check_mode(l, m)?;
    let (lf, mf) = (l as f64, m as f64);
    let big_l = lf * (lf + 1.0);
    Ok(-2.0 * alpha * big_l
        + (alpha - beta) * 2.0 * big_l / ((2.0 * lf + 3.0) * (2.0 * lf - 1.0))
            * (2.0 * lf * lf - 2.0 * mf * mf + 2.0 * lf - 1.0))
}

/// `<v_m, A_1 v_m>` (cos) or `<w_m, A_1 w_m>` (sin).
pub fn triaxial_entry_diag(
    l: usize,
    m: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    family: Family,
) -> Result<f64> {
    ModeIndex::new(l, m, family)?;
    let lf = l as f64;
    let big_l = lf * (lf + 1.0);
    let den = (2.0 * lf + 3.0) * (2.0 * lf - 1.0);
    if m == 1 {
        // m = 1 picks up an extra cos(2 theta) contribution, with opposite
        // signs for the two families
        let weight = match family {
            Family::Cos => 1.5 * alpha + 0.5 * beta - 2.0 * gamma,
            Family::Sin => 1.5 * beta + 0.5 * alpha - 2.0 * gamma,
        };
        return Ok(weight * 2.0 * big_l * big_l / den + 2.0 * big_l * gamma);
    }
    let mf = m as f64;
    Ok(2.0 * gamma * big_l
        + (alpha + beta - 2.0 * gamma) * 2.0 * big_l / den * (lf * lf + mf * mf + lf - 1.0))
}

/// `<v_{m-2}, A_1 v_m>`, equal to `<w_{m-2}, A_1 w_m>` for `m >= 3`.
pub fn triaxial_entry_offdiag(l: usize, m: usize, alpha: f64, beta: f64) -> Result<f64> {
    if m < 2 || m > l {
        return Err(Error::InvalidMode {
            l: l as i64,
            m: m as i64,
        });
    }
    let (lf, mf) = (l as f64, m as f64);
    let big_l = lf * (lf + 1.0);
    let root = ((lf - mf + 1.0) * (lf - mf + 2.0) * (lf + mf - 1.0) * (lf + mf)).sqrt();
    let mut entry = (beta - alpha) * big_l / ((2.0 * lf - 1.0) * (2.0 * lf + 3.0)) * root;
    if m == 2 {
        // v_0 has norm^2 2 pi against pi for the others
        entry *= std::f64::consts::SQRT_2;
    }
    Ok(entry)
}

/// The four negated blocks of level `l`, in the order cos-even, cos-odd,
/// sin-even, sin-odd. Empty blocks are included with no rows.
pub fn assemble_blocks(l: usize, alpha: f64, beta: f64, gamma: f64) -> [TridiagonalBlock; 4] {
    BlockKind::ALL.map(|which| {
        let family = which.family();
        let ms: Vec<usize> = (which.first_m()..=l).step_by(2).collect();
        let diag = ms
            .iter()
            .map(|&m| -triaxial_entry_diag(l, m, alpha, beta, gamma, family).unwrap())
            .collect();
        let offdiag = ms
            .iter()
            .skip(1)
            .map(|&m| -triaxial_entry_offdiag(l, m, alpha, beta).unwrap())
            .collect();
        TridiagonalBlock {
            which,
            diag,
            offdiag,
            mode_labels: ms.iter().map(|&m| ModeIndex { l, m, family }).collect(),
        }
    })
}

/// Group ascending values into clusters closer than `TAU_MULT` relative to the
/// largest magnitude; returns a cluster id per value.
fn cluster_ids(sorted: &[f64]) -> Vec<usize> {
    let scale = sorted.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let mut ids = Vec::with_capacity(sorted.len());
    let mut id = 0;
    for (i, &v) in sorted.iter().enumerate() {
        if i > 0 && v - sorted[i - 1] > TAU_MULT * scale {
            id += 1;
        }
        ids.push(id);
    }
    ids
}

fn assign_clusters(records: &mut [PerturbedEigenvalue]) {
    let values: Vec<f64> = records.iter().map(|r| r.lambda1).collect();
    let ids = cluster_ids(&values);
    for (r, &id) in records.iter_mut().zip(&ids) {
        r.cluster = id;
        r.multiplicity = ids.iter().filter(|&&j| j == id).count();
    }
}

/// All `2l+1` corrections of level `l`, ascending, with eigenvectors over
/// the real harmonics of their block.
pub fn perturbed_spectrum(
    l: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<Vec<PerturbedEigenvalue>> {
    let mut records = Vec::with_capacity(2 * l + 1);
    for block in assemble_blocks(l, alpha, beta, gamma) {
        if block.diag.is_empty() {
            continue;
        }
        let t = SymTridiagonal::new(block.diag.clone(), block.offdiag.clone())?;
        let pairs = eig_tridiagonal(&t)?;
        for (value, vector) in pairs.values.into_iter().zip(pairs.vectors) {
            records.push(PerturbedEigenvalue {
                lambda0: level(l),
                lambda1: value,
                multiplicity: 1,
                cluster: 0,
                eigvec: vector,
                modes: block.mode_labels.clone(),
                source: Source::Block(block.which),
            });
        }
    }
    records.sort_by(|a, b| a.lambda1.total_cmp(&b.lambda1));
    assign_clusters(&mut records);
    Ok(records)
}

/// Corrections of level `l` for the ellipsoid of revolution about the `c`
/// axis with pair `alpha` and distinguished `beta`, from the closed form.
/// Each record carries a single pure harmonic.
pub fn biaxial_perturbed_spectrum(
    l: usize,
    alpha: f64,
    beta: f64,
) -> Result<Vec<PerturbedEigenvalue>> {
    let mut records = Vec::with_capacity(2 * l + 1);
    for m in 0..=l {
        let lambda1 = biaxial_lambda1(l as i64, m as i64, alpha, beta)?;
        let families: &[Family] = if m == 0 {
            &[Family::Cos]
        } else {
            &[Family::Cos, Family::Sin]
        };
        for &family in families {
            records.push(PerturbedEigenvalue {
                lambda0: level(l),
                lambda1,
                multiplicity: 1,
                cluster: 0,
                eigvec: vec![1.0],
                modes: vec![ModeIndex { l, m, family }],
                source: Source::BiaxialClosedForm,
            });
        }
    }
    records.sort_by(|a, b| a.lambda1.total_cmp(&b.lambda1));
    assign_clusters(&mut records);
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Simple,
    Double,
    Higher(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport {
    /// One entry per correction, ascending.
    pub classes: Vec<Multiplicity>,
    /// True when no theorem covers the case (three distinct axes and
    /// `l >= 4`): simplicity is then an observation only.
    pub empirical: bool,
}

impl MultiplicityReport {
    pub fn count(&self, class: Multiplicity) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }
}

pub fn multiplicity_report(
    l: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<MultiplicityReport> {
    let spectrum = perturbed_spectrum(l, alpha, beta, gamma)?;
    let classes = spectrum
        .iter()
        .map(|r| match r.multiplicity {
            1 => Multiplicity::Simple,
            2 => Multiplicity::Double,
            k => Multiplicity::Higher(k),
        })
        .collect();
    let distinct = alpha != beta && beta != gamma && alpha != gamma;
    Ok(MultiplicityReport {
        classes,
        empirical: distinct && l >= 4,
    })
}
