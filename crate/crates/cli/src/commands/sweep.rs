use ellipsoid_lb::biaxial_fd::eigenvalues_biaxial_fd;
use ellipsoid_lb::geometry::EllipsoidSpec;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{base_meta, check_grid};
use crate::args::{GlobalArgs, SweepArgs};
use crate::output::Table;
use crate::CliError;

pub const COLUMNS: [&str; 4] = ["b", "m", "index", "lambda"];

/// Samples `b_min .. b_max` evenly in `log b`, ends included.
pub fn log_samples(b_min: f64, b_max: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![b_min];
    }
    let (lo, hi) = (b_min.ln(), b_max.ln());
    (0..n)
        .map(|i| match i {
            0 => b_min,
            _ if i == n - 1 => b_max,
            _ => (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub b_lo: f64,
    pub b_hi: f64,
    /// `(m, index)` of the two branches.
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Branch pairs whose order changes between adjacent samples. `curves[k]`
/// holds one branch over all samples; branches of the same `m` never cross.
pub fn find_crossings(b: &[f64], labels: &[(usize, usize)], curves: &[Vec<f64>]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for s in 0..b.len().saturating_sub(1) {
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                if labels[i].0 == labels[j].0 {
                    continue;
                }
                let before = curves[i][s] - curves[j][s];
                let after = curves[i][s + 1] - curves[j][s + 1];
                if before * after < 0.0 {
                    out.push(Crossing {
                        b_lo: b[s],
                        b_hi: b[s + 1],
                        first: labels[i],
                        second: labels[j],
                    });
                }
            }
        }
    }
    out
}

pub fn run(global: &GlobalArgs, args: &SweepArgs) -> Result<Table, CliError> {
    super::reject_axes(global, "sweep-biaxial")?;
    if global.perturb.is_some() {
        return Err(CliError::Usage(
            "sweep-biaxial does not take --perturb".into(),
        ));
    }
    check_grid(global)?;
    if !(args.b_min > 0.0 && args.b_max >= args.b_min && args.b_max.is_finite()) {
        return Err(CliError::Usage("need 0 < --b-min <= --b-max".into()));
    }
    if args.samples == 0 || args.count == 0 || args.m_min > args.m_max {
        return Err(CliError::Usage(
            "need --samples >= 1, --count >= 1 and --m-min <= --m-max".into(),
        ));
    }
    let b = log_samples(args.b_min, args.b_max, args.samples);
    let modes: Vec<usize> = (args.m_min..=args.m_max).collect();
    let solved: Vec<Vec<Vec<f64>>> = b
        .par_iter()
        .map(|&bv| {
            let spec = EllipsoidSpec::from_axes(1.0, 1.0, bv)?;
            modes
                .iter()
                .map(|&m| {
                    eigenvalues_biaxial_fd(&spec, m, global.grid, args.count, global.pole_bc.into())
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;

    let labels: Vec<(usize, usize)> = modes
        .iter()
        .flat_map(|&m| (0..args.count).map(move |k| (m, k)))
        .collect();
    let curves: Vec<Vec<f64>> = modes
        .iter()
        .enumerate()
        .flat_map(|(mi, _)| {
            let solved = &solved;
            (0..args.count).map(move |k| solved.iter().map(|per_b| per_b[mi][k]).collect())
        })
        .collect();
    let crossings = find_crossings(&b, &labels, &curves);

    let mut table = Table::new(COLUMNS.to_vec());
    base_meta(&mut table, "sweep-biaxial", global, args);
    table.meta("ellipsoid", json!("axes (1, 1, b)"));
    table.meta("crossing_count", json!(crossings.len()));
    table.meta(
        "crossings",
        serde_json::to_value(&crossings).unwrap_or_default(),
    );
    for (bv, per_b) in b.iter().zip(&solved) {
        for (m, values) in modes.iter().zip(per_b) {
            for (k, v) in values.iter().enumerate() {
                table.push(vec![(*bv).into(), (*m).into(), k.into(), (*v).into()]);
            }
        }
    }
    Ok(table)
}
