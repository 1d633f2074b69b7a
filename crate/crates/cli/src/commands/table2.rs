use ellipsoid_lb::geometry::EllipsoidSpec;
use ellipsoid_lb::perturbation::perturbed_spectrum;
use ellipsoid_lb::triaxial_galerkin::{extrapolate_to_zero, level_cluster, solve_triaxial};
use rayon::prelude::*;
use serde_json::json;

use super::{base_meta, check_eps};
use crate::args::{GlobalArgs, Table2Args};
use crate::output::{Cell, Table};
use crate::CliError;

pub const COLUMNS: [&str; 10] = [
    "eps",
    "l",
    "rank",
    "lambda0",
    "lambda1",
    "lambda_numeric",
    "slope",
    "slope_err",
    "richardson_slope",
    "richardson_err",
];

const DEFAULT_PARAMS: [f64; 3] = [0.0, 1.0, -1.0];

/// Level clusters `1..=levels` of the Galerkin spectrum at each `eps`.
fn clusters(
    params: [f64; 3],
    eps_list: &[f64],
    levels: usize,
    l_max: usize,
) -> Result<Vec<Vec<Vec<f64>>>, CliError> {
    let k = (levels + 1) * (levels + 1);
    eps_list
        .par_iter()
        .map(|&eps| {
            let spec = EllipsoidSpec::from_perturbation(params[0], params[1], params[2], eps)?;
            let values = solve_triaxial(&spec, l_max, k)?.values;
            (1..=levels)
                .map(|l| level_cluster(&values, l).map_err(CliError::from))
                .collect()
        })
        .collect()
}

pub fn run(global: &GlobalArgs, args: &Table2Args) -> Result<Table, CliError> {
    super::reject_axes(global, "table2")?;
    let params = global
        .perturb
        .map_or(DEFAULT_PARAMS, |p| [p[0], p[1], p[2]]);
    let eps_list = match (&args.eps, global.perturb) {
        (Some(list), _) => list.clone(),
        (None, Some(p)) => vec![p[3]],
        (None, None) => vec![0.2, 0.1],
    };
    check_eps(&eps_list)?;
    check_eps(&args.richardson_eps)?;
    if args.levels == 0 || args.levels + 2 > global.lmax {
        return Err(CliError::Usage(format!(
            "--levels must be between 1 and lmax - 2 = {}",
            global.lmax.saturating_sub(2)
        )));
    }

    let numeric = clusters(params, &eps_list, args.levels, global.lmax)?;
    let rich_numeric = clusters(params, &args.richardson_eps, args.levels, global.lmax)?;

    let mut table = Table::new(COLUMNS.to_vec());
    base_meta(&mut table, "table2", global, args);
    table.meta("params", json!(params));
    table.meta(
        "note",
        json!("(alpha, beta, gamma) = (1, -1, 0) and (0, 1, -1) give the same corrections up to axis permutation; (0, 1, -1) is the default"),
    );
    for (li, l) in (1..=args.levels).enumerate() {
        let lambda0 = (l * (l + 1)) as f64;
        let exact: Vec<f64> = perturbed_spectrum(l, params[0], params[1], params[2])?
            .iter()
            .map(|r| r.lambda1)
            .collect();
        let richardson: Vec<f64> = (0..=2 * l)
            .map(|r| {
                let slopes: Vec<f64> = rich_numeric
                    .iter()
                    .zip(&args.richardson_eps)
                    .map(|(c, e)| (c[li][r] - lambda0) / e)
                    .collect();
                extrapolate_to_zero(&args.richardson_eps, &slopes)
            })
            .collect();
        for (eps, per_level) in eps_list.iter().zip(&numeric) {
            for r in 0..=2 * l {
                let value = per_level[li][r];
                let slope = (value - lambda0) / eps;
                table.push(vec![
                    Cell::Float(*eps),
                    l.into(),
                    r.into(),
                    lambda0.into(),
                    exact[r].into(),
                    value.into(),
                    slope.into(),
                    (slope - exact[r]).abs().into(),
                    richardson[r].into(),
                    (richardson[r] - exact[r]).abs().into(),
                ]);
            }
        }
    }
    Ok(table)
}
