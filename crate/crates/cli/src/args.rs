use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "ellipsoid-lb",
    version,
    about = "Laplace-Beltrami eigenvalues of near-sphere ellipsoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Semi-axes a,b,c
    #[arg(long, global = true, value_parser = parse_triple, conflicts_with = "perturb")]
    pub axes: Option<[f64; 3]>,
    /// Perturbation alpha,beta,gamma,eps of the unit sphere
    #[arg(long, global = true, value_parser = parse_quad, allow_hyphen_values = true)]
    pub perturb: Option<[f64; 4]>,
    /// Finite-difference intervals on [0, pi]
    #[arg(long, global = true, default_value_t = 400)]
    pub grid: usize,
    /// Highest harmonic degree in the Galerkin basis
    #[arg(long, global = true, default_value_t = 12)]
    pub lmax: usize,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = PoleBcArg::Auto)]
    pub pole_bc: PoleBcArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoleBcArg {
    Neumann,
    Auto,
}

impl From<PoleBcArg> for ellipsoid_lb::biaxial_fd::PoleBc {
    fn from(bc: PoleBcArg) -> Self {
        match bc {
            PoleBcArg::Neumann => Self::Neumann,
            PoleBcArg::Auto => Self::Auto,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Biaxial closed-form corrections against finite differences
    Table1(Table1Args),
    /// Triaxial closed-form corrections against Galerkin slopes
    Table2(Table2Args),
    /// Eigenvalues of (1, 1, b) over a range of b
    SweepBiaxial(SweepArgs),
    /// Nodal domain counts of first-order eigenfunctions
    Nodal(NodalArgs),
    /// Run the built-in consistency checks
    Verify(VerifyArgs),
    /// Low eigenvalues of one ellipsoid
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Table1Args {
    /// Correction of the equal pair of axes
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Correction of the distinguished axis
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.05])]
    pub eps: Vec<f64>,
    /// Highest level l
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Table2Args {
    /// eps values (default: the eps of --perturb, else 0.2,0.1)
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    /// eps values of the extrapolated slope column
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.05, 0.025])]
    pub richardson_eps: Vec<f64>,
    /// Highest level l
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.1)]
    pub b_min: f64,
    #[arg(long, default_value_t = 500.0)]
    pub b_max: f64,
    /// Logarithmically spaced samples, ends included
    #[arg(long, default_value_t = 41)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub m_min: usize,
    #[arg(long, default_value_t = 5)]
    pub m_max: usize,
    /// Eigenvalues per mode
    #[arg(long, default_value_t = 10)]
    pub count: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NodalArgs {
    /// Highest level l (levels 1..=l-max)
    #[arg(long, default_value_t = 4)]
    pub l_max: usize,
    /// Random triaxial parameter triples instead of --perturb
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Sample grid as N_PHIxN_THETA
    #[arg(long, value_parser = parse_dims, default_value = "800x1600")]
    pub nodal_grid: [usize; 2],
    /// Write a sign-pattern graymap per eigenfunction into this directory
    #[arg(long)]
    pub pgm: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Sample grid of the nodal checks as N_PHIxN_THETA
    #[arg(long, value_parser = parse_dims, default_value = "400x800")]
    pub nodal_grid: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Galerkin,
    Fd,
    Perturbation,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = Method::Galerkin)]
    pub method: Method,
    /// Number of eigenvalues (per mode for fd)
    #[arg(long, default_value_t = 16)]
    pub count: usize,
    /// Highest mode for fd, highest level for perturbation
    #[arg(long, default_value_t = 3)]
    pub m_max: usize,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0_f64; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("not a number: {p:?}"))?;
        if !slot.is_finite() {
            return Err(format!("not finite: {p:?}"));
        }
    }
    Ok(out)
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    parse_list::<3>(s)
}

fn parse_quad(s: &str) -> Result<[f64; 4], String> {
    parse_list::<4>(s)
}

fn parse_dims(s: &str) -> Result<[usize; 2], String> {
    let (p, t) = s
        .split_once('x')
        .ok_or_else(|| format!("expected N_PHIxN_THETA, got {s:?}"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|_| format!("not a size: {v:?}"))
    };
    Ok([parse(p)?, parse(t)?])
}
