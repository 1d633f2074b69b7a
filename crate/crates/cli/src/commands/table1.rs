use ellipsoid_lb::biaxial_fd::eigenvalues_biaxial_fd;
use ellipsoid_lb::geometry::EllipsoidSpec;
use ellipsoid_lb::perturbation::biaxial_lambda1;
use rayon::prelude::*;
use serde_json::json;

use super::{base_meta, check_eps, check_grid};
use crate::args::{GlobalArgs, Table1Args};
use crate::output::{Cell, Table};
use crate::CliError;

pub const COLUMNS: [&str; 8] = [
    "eps",
    "l",
    "m",
    "lambda0",
    "lambda1",
    "lambda_numeric",
    "slope",
    "rel_err_percent",
];

pub fn run(global: &GlobalArgs, args: &Table1Args) -> Result<Table, CliError> {
    super::reject_axes(global, "table1")?;
    if global.perturb.is_some() {
        return Err(CliError::Usage(
            "table1 takes --alpha, --beta and --eps instead of --perturb".into(),
        ));
    }
    check_eps(&args.eps)?;
    check_grid(global)?;
    if args.levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    let levels = args.levels;
    let jobs: Vec<(f64, usize)> = args
        .eps
        .iter()
        .flat_map(|&e| (0..=levels).map(move |m| (e, m)))
        .collect();
    // one finite-difference solve per (eps, m), rows in a fixed order
    let columns: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(eps, m)| {
            let pair = 1.0 + args.alpha * eps;
            let spec = EllipsoidSpec::from_axes(pair, pair, 1.0 + args.beta * eps)?;
            eigenvalues_biaxial_fd(&spec, m, global.grid, levels + 1 - m, global.pole_bc.into())
        })
        .collect::<Result<_, _>>()?;

    let mut table = Table::new(COLUMNS.to_vec());
    base_meta(&mut table, "table1", global, args);
    table.meta(
        "ellipsoid",
        json!("axes (1 + alpha eps, 1 + alpha eps, 1 + beta eps); lambda_numeric is the (l - m)-th value of mode m, counting the constant mode for m = 0"),
    );
    for ((eps, m), values) in jobs.iter().zip(&columns) {
        for l in (*m).max(1)..=levels {
            let lambda0 = (l * (l + 1)) as f64;
            let lambda1 = biaxial_lambda1(l as i64, *m as i64, args.alpha, args.beta)?;
            let numeric = values[l - m];
            let slope = (numeric - lambda0) / eps;
            let rel = (lambda1 != 0.0).then(|| 100.0 * ((slope - lambda1) / lambda1).abs());
            table.push(vec![
                Cell::Float(*eps),
                l.into(),
                (*m).into(),
                lambda0.into(),
                lambda1.into(),
                numeric.into(),
                slope.into(),
                rel.into(),
            ]);
        }
    }
    Ok(table)
}
