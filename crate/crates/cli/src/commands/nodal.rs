use std::fs;

use ellipsoid_lb::nodal::{check_conjecture, ShapeCase, SignGrid};
use ellipsoid_lb::perturbation::perturbed_spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::base_meta;
use crate::args::{GlobalArgs, NodalArgs};
use crate::output::Table;
use crate::CliError;

pub const COLUMNS: [&str; 15] = [
    "spec",
    "alpha",
    "beta",
    "gamma",
    "case",
    "l",
    "rank",
    "lambda1",
    "count",
    "refined_count",
    "conjectured",
    "match",
    "courant_bound",
    "courant_ok",
    "suspect",
];

const DEFAULT_PARAMS: [f64; 3] = [1.0, 2.0, 3.0];

fn case_name(case: ShapeCase) -> &'static str {
    match case {
        ShapeCase::Oblate => "oblate",
        ShapeCase::Prolate => "prolate",
        ShapeCase::Triaxial => "triaxial",
    }
}

pub fn random_params(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn run(global: &GlobalArgs, args: &NodalArgs) -> Result<Table, CliError> {
    super::reject_axes(global, "nodal")?;
    if args.l_max == 0 || args.l_max > 7 {
        return Err(CliError::Usage("--l-max must be between 1 and 7".into()));
    }
    let [n_phi, n_theta] = args.nodal_grid;
    if n_phi < 4 || n_theta < 4 {
        return Err(CliError::Usage("--nodal-grid needs at least 4x4".into()));
    }
    let specs = if args.random > 0 {
        if global.perturb.is_some() {
            return Err(CliError::Usage("use either --random or --perturb".into()));
        }
        random_params(args.random, global.seed)
    } else {
        vec![global
            .perturb
            .map_or(DEFAULT_PARAMS, |p| [p[0], p[1], p[2]])]
    };
    if let Some(dir) = &args.pgm {
        fs::create_dir_all(dir)?;
    }

    let mut table = Table::new(COLUMNS.to_vec());
    base_meta(&mut table, "nodal", global, args);
    let mut relabeled = Vec::new();
    for (idx, p) in specs.iter().enumerate() {
        for l in 1..=args.l_max {
            let check = check_conjecture(p[0], p[1], p[2], l, n_phi, n_theta)?;
            if l == 1 {
                relabeled.push(json!({ "spec": idx, "given": p, "used": check.params }));
            }
            if let Some(dir) = &args.pgm {
                let q = check.params;
                for (rank, rec) in perturbed_spectrum(l, q[0], q[1], q[2])?.iter().enumerate() {
                    let signs = SignGrid::from_modes(&rec.modes, &rec.eigvec, n_phi, n_theta)?;
                    fs::write(
                        dir.join(format!("spec{idx}_l{l}_r{rank}.pgm")),
                        signs.to_pgm(),
                    )?;
                }
            }
            for r in &check.ranks {
                table.push(vec![
                    idx.into(),
                    p[0].into(),
                    p[1].into(),
                    p[2].into(),
                    case_name(check.case).into(),
                    l.into(),
                    r.rank.into(),
                    r.lambda1.into(),
                    r.count.count.into(),
                    r.count.refined_count.into(),
                    r.expected.into(),
                    r.matches.into(),
                    r.courant_bound.into(),
                    r.courant_ok.into(),
                    r.count.suspect().into(),
                ]);
            }
        }
    }
    table.meta("relabeling", json!(relabeled));
    Ok(table)
}
