use ellipsoid_lb::biaxial_fd::eigenvalues_biaxial_fd;
use ellipsoid_lb::geometry::EllipsoidSpec;
use ellipsoid_lb::perturbation::{perturbed_spectrum, Source};
use ellipsoid_lb::triaxial_galerkin::solve_triaxial;
use rayon::prelude::*;
use serde_json::json;

use super::{base_meta, check_grid};
use crate::args::{GlobalArgs, Method, SpectrumArgs};
use crate::output::{Cell, Table};
use crate::CliError;

fn spec_from(global: &GlobalArgs) -> Result<EllipsoidSpec, CliError> {
    match (global.axes, global.perturb) {
        (Some([a, b, c]), _) => Ok(EllipsoidSpec::from_axes(a, b, c)?),
        (None, Some([al, be, ga, eps])) => Ok(EllipsoidSpec::from_perturbation(al, be, ga, eps)?),
        (None, None) => Err(CliError::Usage("spectrum needs --axes or --perturb".into())),
    }
}

pub fn run(global: &GlobalArgs, args: &SpectrumArgs) -> Result<Table, CliError> {
    if args.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mut table = match args.method {
        Method::Galerkin => galerkin(global, args)?,
        Method::Fd => fd(global, args)?,
        Method::Perturbation => perturbation(global, args)?,
    };
    base_meta(&mut table, "spectrum", global, args);
    Ok(table)
}

fn galerkin(global: &GlobalArgs, args: &SpectrumArgs) -> Result<Table, CliError> {
    let spec = spec_from(global)?;
    let eps = global.perturb.map(|p| p[3]).filter(|&e| e > 0.0);
    let result = solve_triaxial(&spec, global.lmax, args.count)?;
    let mut table = Table::new(vec!["index", "lambda", "l_assigned", "slope"]);
    table.meta("axes", json!(spec.axes()));
    table.meta("residual_bound", json!(result.residual_bound));
    table.meta(
        "l_assigned",
        json!("level l whose window [l^2, (l+1)^2) contains lambda"),
    );
    for (i, &v) in result.values.iter().enumerate() {
        let l = v.max(0.0).sqrt().floor() as usize;
        let slope = eps.map(|e| (v - (l * (l + 1)) as f64) / e);
        table.push(vec![i.into(), v.into(), l.into(), slope.into()]);
    }
    Ok(table)
}

fn fd(global: &GlobalArgs, args: &SpectrumArgs) -> Result<Table, CliError> {
    check_grid(global)?;
    let spec = spec_from(global)?;
    if !spec.is_biaxial() {
        return Err(CliError::Usage(
            "--method fd needs two equal semi-axes".into(),
        ));
    }
    let columns: Vec<Vec<f64>> = (0..=args.m_max)
        .into_par_iter()
        .map(|m| eigenvalues_biaxial_fd(&spec, m, global.grid, args.count, global.pole_bc.into()))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(vec!["m", "index", "n", "lambda"]);
    table.meta("axes", json!(spec.axes()));
    for (m, values) in columns.iter().enumerate() {
        for (k, &v) in values.iter().enumerate() {
            table.push(vec![m.into(), k.into(), global.grid.into(), v.into()]);
        }
    }
    Ok(table)
}

fn perturbation(global: &GlobalArgs, args: &SpectrumArgs) -> Result<Table, CliError> {
    let Some([al, be, ga, eps]) = global.perturb else {
        return Err(CliError::Usage(
            "--method perturbation needs --perturb".into(),
        ));
    };
    let mut table = Table::new(vec![
        "l",
        "rank",
        "lambda0",
        "lambda1",
        "multiplicity",
        "lambda_first_order",
        "block",
    ]);
    table.meta("params", json!([al, be, ga]));
    table.meta("lambda_first_order", json!("lambda0 + eps lambda1"));
    for l in 0..=args.m_max {
        for (rank, r) in perturbed_spectrum(l, al, be, ga)?.iter().enumerate() {
            let block = match r.source {
                Source::Block(b) => format!("{b:?}"),
                Source::BiaxialClosedForm => "closed-form".to_string(),
            };
            table.push(vec![
                l.into(),
                rank.into(),
                r.lambda0.into(),
                r.lambda1.into(),
                r.multiplicity.into(),
                (r.lambda0 + eps * r.lambda1).into(),
                Cell::Text(block),
            ]);
        }
    }
    Ok(table)
}
