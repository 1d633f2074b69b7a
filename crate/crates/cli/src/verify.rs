//! Built-in consistency checks: closed forms against reference values,
//! quadrature oracles, solver cross-checks and nodal counts.

use std::f64::consts::PI;

use ellipsoid_lb::biaxial_fd::{convergence_study, eigenvalues_biaxial_fd, PoleBc};
use ellipsoid_lb::eigensolve::{
    eig_dense_symmetric, eig_generalized, eig_tridiagonal, SymMatrix, SymTridiagonal,
};
use ellipsoid_lb::geometry::{a1_apply, EllipsoidSpec, Jet};
use ellipsoid_lb::nodal::{check_conjecture, conjecture_sequences, ShapeCase};
use ellipsoid_lb::perturbation::{
    assemble_blocks, biaxial_lambda1, biaxial_perturbed_spectrum, perturbed_spectrum,
    triaxial_entry_diag, triaxial_entry_offdiag, Family, ModeIndex,
};
use ellipsoid_lb::special_fn::{
    bessel_j, bessel_j_prime, bessel_root, gauss_legendre, legendre_p_normalized,
    legendre_p_normalized_dphi, legendre_ratio, BesselKind, LegendreMode,
};
use ellipsoid_lb::triaxial_galerkin::{assemble_galerkin, slope_extraction, solve_triaxial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{GlobalArgs, VerifyArgs};
use crate::commands::base_meta;
use crate::output::Table;
use crate::CliError;

type CheckResult = Result<String, String>;

struct Check {
    name: String,
    run: Box<dyn Fn() -> CheckResult + Send + Sync>,
}

fn check(name: impl Into<String>, run: impl Fn() -> CheckResult + Send + Sync + 'static) -> Check {
    Check {
        name: name.into(),
        run: Box::new(run),
    }
}

fn within(err: f64, tol: f64) -> CheckResult {
    if err <= tol {
        Ok(format!("err {err:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("err {err:.3e} > {tol:.0e}"))
    }
}

fn lib<T>(r: ellipsoid_lb::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn corrections(l: usize, a: f64, b: f64, c: f64) -> Result<Vec<f64>, String> {
    Ok(lib(perturbed_spectrum(l, a, b, c))?
        .iter()
        .map(|r| r.lambda1)
        .collect())
}

fn max_sorted_diff(mut x: Vec<f64>, mut y: Vec<f64>) -> f64 {
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    x.iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

/// Triples whose entries differ pairwise by at least `gap`. Nearly equal
/// parameters give nearly double corrections, split far below any sane
/// multiplicity tolerance.
fn separated_triples(seed: u64, n: usize, gap: f64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        if (p[0] - p[1]).abs() >= gap && (p[1] - p[2]).abs() >= gap && (p[0] - p[2]).abs() >= gap {
            out.push(p);
        }
    }
    out
}

fn triples(seed: u64, n: usize) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
        .collect()
}

const BIAXIAL_ROWS: [(usize, usize, f64, f64, f64); 9] = [
    (1, 0, -12.0 / 5.0, 1.7772, 1.8844),
    (2, 0, -44.0 / 7.0, 5.4079, 5.6950),
    (3, 0, -184.0 / 15.0, 10.8463, 11.4052),
    (1, 1, -4.0 / 5.0, 1.9250, 1.9612),
    (2, 1, -36.0 / 7.0, 5.5227, 5.7521),
    (3, 1, -168.0 / 15.0, 10.9509, 11.4573),
    (2, 2, -12.0 / 7.0, 5.8404, 5.9173),
    (3, 2, -8.0, 11.2595, 11.6152),
    (3, 3, -8.0 / 3.0, 11.7527, 11.8716),
];

fn biaxial_fd_rows(eps: f64, n: usize, bc: PoleBc) -> Result<Vec<f64>, String> {
    let spec = lib(EllipsoidSpec::from_axes(1.0, 1.0, 1.0 + eps))?;
    let cols: Vec<Vec<f64>> = (0..=3)
        .map(|m| lib(eigenvalues_biaxial_fd(&spec, m, n, 5, bc)))
        .collect::<Result<_, _>>()?;
    Ok(BIAXIAL_ROWS
        .iter()
        .map(|&(l, m, ..)| cols[m][l - m])
        .collect())
}

fn level3_surds(a: f64, b: f64, c: f64) -> Vec<f64> {
    let pair = |x: f64, y: f64, z: f64| {
        let mid = -(104.0 * x + 104.0 * y + 152.0 * z) / 15.0;
        let r =
            32.0 / 15.0 * (4.0 * x * x + 4.0 * y * y - 7.0 * x * y - x * z - y * z + z * z).sqrt();
        [mid - r, mid + r]
    };
    let mut v = Vec::with_capacity(7);
    v.extend(pair(a, b, c));
    v.extend(pair(c, b, a));
    v.extend(pair(c, a, b));
    v.push(-8.0 * (a + b + c));
    v
}

/// Jet of `P_l^m(cos phi) f(m theta)`, with the second `phi` derivative from
/// the associated Legendre equation.
fn harmonic_jet(mode: ModeIndex, phi: f64, theta: f64) -> Jet {
    let t = phi.cos();
    let lm = LegendreMode {
        l: mode.l,
        m: mode.m,
    };
    let p = legendre_p_normalized(lm, t).unwrap();
    let dp = legendre_p_normalized_dphi(lm, t).unwrap();
    let (s, big_l, mf) = (phi.sin(), (mode.l * (mode.l + 1)) as f64, mode.m as f64);
    let ddp = -t / s * dp - (big_l - mf * mf / (s * s)) * p;
    let (sn, cs) = (mf * theta).sin_cos();
    let (f, df, ddf) = match mode.family {
        Family::Cos => (cs, -mf * sn, -mf * mf * cs),
        Family::Sin => (sn, mf * cs, -mf * mf * sn),
    };
    Jet {
        value: p * f,
        phi: dp * f,
        theta: p * df,
        phiphi: ddp * f,
        phitheta: dp * df,
        thetatheta: p * ddf,
    }
}

fn entry_oracle(l: usize, [a, b, c]: [f64; 3]) -> Result<f64, String> {
    let modes: Vec<ModeIndex> = (0..=l)
        .flat_map(|m| {
            let fams: &[Family] = if m == 0 {
                &[Family::Cos]
            } else {
                &[Family::Cos, Family::Sin]
            };
            fams.iter().map(move |&family| ModeIndex { l, m, family })
        })
        .collect();
    let rule = gauss_legendre(2 * l + 10);
    let n_theta = 4 * l + 12;
    let dtheta = 2.0 * PI / n_theta as f64;
    let mut worst = 0.0_f64;
    for j in &modes {
        for k in &modes {
            let mut quad = 0.0;
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                let phi = t.acos();
                for i in 0..n_theta {
                    let theta = i as f64 * dtheta;
                    let au = lib(a1_apply(a, b, c, &harmonic_jet(*k, phi, theta), phi, theta))?;
                    quad += w * dtheta * harmonic_jet(*j, phi, theta).value * au;
                }
            }
            let want = if j.family != k.family {
                0.0
            } else if j.m == k.m {
                lib(triaxial_entry_diag(l, j.m, a, b, c, j.family))?
            } else if j.m.abs_diff(k.m) == 2 {
                lib(triaxial_entry_offdiag(l, j.m.max(k.m), a, b))?
            } else {
                0.0
            };
            worst = worst.max((quad - want).abs());
        }
    }
    Ok(worst)
}

fn nodal_exemplar(params: [f64; 3], case: ShapeCase, grid: [usize; 2]) -> CheckResult {
    let check = lib(check_conjecture(
        params[0], params[1], params[2], 4, grid[0], grid[1],
    ))?;
    let expected = conjecture_sequences(4, case);
    if check.case != case {
        return Err(format!("classified as {:?}", check.case));
    }
    if check.all_match() && check.courant_ok() && !check.any_suspect() {
        Ok(format!("{:?}", check.counts()))
    } else {
        Err(format!("got {:?}, want {expected:?}", check.counts()))
    }
}

fn checks(global: &GlobalArgs, args: &VerifyArgs) -> Vec<Check> {
    let seed = global.seed;
    let grid = args.nodal_grid;
    let mut list = Vec::new();

    for &(l, m, want, ..) in &BIAXIAL_ROWS {
        list.push(check(
            format!("biaxial correction l={l} m={m}"),
            move || {
                within(
                    (lib(biaxial_lambda1(l as i64, m as i64, 0.0, 1.0))? - want).abs(),
                    1e-12,
                )
            },
        ));
    }
    list.push(check("triaxial corrections l=1 at (0,1,-1)", || {
        within(
            max_sorted_diff(corrections(1, 0.0, 1.0, -1.0)?, vec![-1.6, 0.0, 1.6]),
            1e-12,
        )
    }));
    list.push(check("triaxial corrections l=2 at (0,1,-1)", || {
        let s = 16.0 / 7.0 * 3f64.sqrt();
        let want = vec![-s, -24.0 / 7.0, 0.0, 24.0 / 7.0, s];
        within(
            max_sorted_diff(corrections(2, 0.0, 1.0, -1.0)?, want),
            1e-12,
        )
    }));
    list.push(check("level-3 surd formulas", move || {
        let mut worst = 0.0_f64;
        for [a, b, c] in triples(seed, 10) {
            worst = worst.max(max_sorted_diff(
                corrections(3, a, b, c)?,
                level3_surds(a, b, c),
            ));
        }
        within(worst, 1e-10)
    }));
    list.push(check("level-3 reduction at gamma = alpha", move || {
        let mut worst = 0.0_f64;
        for [a, b, _] in triples(seed + 1, 10) {
            let v = |p: f64, q: f64| p * a + q * b;
            let want = vec![
                v(-176.0 / 15.0, -184.0 / 15.0),
                v(-64.0 / 5.0, -56.0 / 5.0),
                v(-64.0 / 5.0, -56.0 / 5.0),
                v(-16.0, -8.0),
                v(-16.0, -8.0),
                v(-64.0 / 3.0, -8.0 / 3.0),
                v(-64.0 / 3.0, -8.0 / 3.0),
            ];
            worst = worst.max(max_sorted_diff(corrections(3, a, b, a)?, want));
        }
        within(worst, 1e-10)
    }));
    list.push(check(
        "corrections invariant under axis permutations",
        move || {
            let mut worst = 0.0_f64;
            for [a, b, c] in triples(seed + 2, 5) {
                for l in 1..=6 {
                    let base = corrections(l, a, b, c)?;
                    for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                        worst = worst.max(max_sorted_diff(
                            base.clone(),
                            corrections(l, p[0], p[1], p[2])?,
                        ));
                    }
                }
            }
            within(worst, 1e-10)
        },
    ));
    list.push(check("sum of corrections equals block trace", move || {
        let mut worst = 0.0_f64;
        for [a, b, c] in triples(seed + 3, 5) {
            for l in 0..=8 {
                let trace: f64 = assemble_blocks(l, a, b, c)
                    .iter()
                    .flat_map(|x| x.diag.clone())
                    .sum();
                worst = worst.max((trace - corrections(l, a, b, c)?.iter().sum::<f64>()).abs());
            }
        }
        within(worst, 1e-9)
    }));
    list.push(check(
        "uniform rescaling shifts corrections by -2 d l(l+1)",
        move || {
            let mut worst = 0.0_f64;
            for [a, b, c] in triples(seed + 4, 5) {
                for l in 1..=6 {
                    let big_l = (l * (l + 1)) as f64;
                    let want: Vec<f64> = corrections(l, a, b, c)?
                        .iter()
                        .map(|v| v - 0.6 * big_l)
                        .collect();
                    worst = worst.max(max_sorted_diff(
                        corrections(l, a + 0.3, b + 0.3, c + 0.3)?,
                        want,
                    ));
                }
            }
            within(worst, 1e-9)
        },
    ));
    list.push(check(
        "tridiagonal blocks reduce to the biaxial closed form",
        move || {
            let mut worst = 0.0_f64;
            for [p, q, _] in triples(seed + 5, 5) {
                for l in 0..=8 {
                    let closed: Vec<f64> = lib(biaxial_perturbed_spectrum(l, p, q))?
                        .iter()
                        .map(|r| r.lambda1)
                        .collect();
                    worst = worst.max(max_sorted_diff(corrections(l, p, p, q)?, closed));
                }
            }
            within(worst, 1e-10)
        },
    ));
    list.push(check(
        "multiplicities: biaxial l doubles, triaxial simple",
        move || {
            let tau = 1e-9;
            for [a, b, c] in separated_triples(seed + 6, 5, 0.3) {
                for l in 1..=5 {
                    for (vals, want) in [
                        (corrections(l, a, a, b)?, l + 1),
                        (corrections(l, a, b, c)?, 2 * l + 1),
                    ] {
                        let scale = vals.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
                        let distinct = 1 + vals
                            .windows(2)
                            .filter(|w| w[1] - w[0] > tau * scale)
                            .count();
                        if distinct != want {
                            return Err(format!("l={l}: {distinct} distinct values, want {want}"));
                        }
                    }
                }
            }
            Ok("l <= 5".into())
        },
    ));

    list.push(check("Gauss-Legendre exactness", || {
        let mut worst = 0.0_f64;
        for n in 1..=30 {
            let rule = gauss_legendre(n);
            for k in 0..2 * n {
                let want = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                worst = worst.max((rule.integrate(|t| t.powi(k as i32)) - want).abs());
            }
        }
        within(worst, 1e-13)
    }));
    list.push(check("Legendre orthonormality", || {
        let rule = gauss_legendre(30);
        let mut worst = 0.0_f64;
        for m in 0..=6 {
            let norm = if m == 0 { 2.0 * PI } else { PI };
            for l1 in m..=12 {
                for l2 in m..=12 {
                    let ip = rule.integrate(|t| {
                        legendre_p_normalized(LegendreMode { l: l1, m }, t).unwrap()
                            * legendre_p_normalized(LegendreMode { l: l2, m }, t).unwrap()
                    }) * norm;
                    worst = worst.max((ip - if l1 == l2 { 1.0 } else { 0.0 }).abs());
                }
            }
        }
        within(worst, 1e-12)
    }));
    list.push(check("Legendre moment ratio vs quadrature", || {
        let rule = gauss_legendre(30);
        let mut worst = 0.0_f64;
        for l in 0..=12 {
            for m in 0..=l {
                let mode = LegendreMode { l, m };
                let p = |t: f64| legendre_p_normalized(mode, t).unwrap();
                let ratio =
                    rule.integrate(|t| t * t * p(t) * p(t)) / rule.integrate(|t| p(t) * p(t));
                worst = worst.max((ratio - legendre_ratio(mode)).abs());
            }
        }
        within(worst, 1e-10)
    }));
    list.push(check(
        "tridiagonal entries vs quadrature of A1",
        move || {
            let mut worst = 0.0_f64;
            for p in triples(seed + 7, 3) {
                for l in 1..=5 {
                    worst = worst.max(entry_oracle(l, p)?);
                }
            }
            within(worst, 1e-8)
        },
    ));
    list.push(check("Bessel roots", || {
        let mut worst = 0.0_f64;
        for m in 0..=5 {
            for k in 1..=5 {
                worst = worst.max(bessel_j(m, lib(bessel_root(m, k, BesselKind::J))?).abs());
                worst =
                    worst.max(bessel_j_prime(m, lib(bessel_root(m, k, BesselKind::JPrime))?).abs());
            }
        }
        within(worst, 1e-12)
    }));

    list.push(check("tridiagonal QL vs dense Jacobi", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 8);
        let n = 30;
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let t = lib(SymTridiagonal::new(d, e))?;
        let x = lib(eig_tridiagonal(&t))?.values;
        let y = lib(eig_dense_symmetric(&t.to_dense()))?.values;
        within(max_sorted_diff(x, y), 1e-11)
    }));
    list.push(check("generalized eigenpairs residual", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 9);
        let n = 20;
        let mut a = SymMatrix::zeros(n);
        let mut m = SymMatrix::identity(n);
        for i in 0..n {
            for j in 0..=i {
                let v = rng.gen_range(-1.0..1.0);
                a.set(i, j, v);
                a.set(j, i, v);
                let w = 0.1 * rng.gen_range(-1.0..1.0);
                if i != j {
                    m.set(i, j, w);
                    m.set(j, i, w);
                }
            }
        }
        let pairs = lib(eig_generalized(&a, &m, n))?;
        let mut worst = 0.0_f64;
        for (v, x) in pairs.values.iter().zip(&pairs.vectors) {
            let (ax, mx) = (a.mul_vec(x), m.mul_vec(x));
            worst = worst.max(
                ax.iter()
                    .zip(&mx)
                    .map(|(p, q)| (p - v * q).abs())
                    .fold(0.0, f64::max),
            );
        }
        within(worst, 1e-10)
    }));

    for (k, eps) in [(0usize, 0.1), (1, 0.05)] {
        let bc = global.pole_bc.into();
        let n = global.grid;
        list.push(check(
            format!("finite differences vs reference values, eps={eps}"),
            move || {
                let got = biaxial_fd_rows(eps, n, bc)?;
                let mut worst = 0.0_f64;
                for (g, row) in got.iter().zip(&BIAXIAL_ROWS) {
                    let reference = if k == 0 { row.3 } else { row.4 };
                    let tol = 5.0 * 10f64.powi(reference.log10().floor() as i32 - 4);
                    worst = worst.max((g - reference).abs() / tol);
                }
                if worst <= 1.0 {
                    Ok(format!("worst err / print tolerance {worst:.2}"))
                } else {
                    Err(format!("worst err / print tolerance {worst:.2} (grid {n})"))
                }
            },
        ));
    }
    {
        let (bc, n) = (global.pole_bc.into(), global.grid);
        list.push(check("slope error shrinks with eps", move || {
            let (c, f) = (biaxial_fd_rows(0.1, n, bc)?, biaxial_fd_rows(0.05, n, bc)?);
            let mut worst = 0.0_f64;
            for (i, &(l, _, want, ..)) in BIAXIAL_ROWS.iter().enumerate() {
                let l0 = (l * (l + 1)) as f64;
                let e1 = ((c[i] - l0) / 0.1 - want).abs();
                let e2 = ((f[i] - l0) / 0.05 - want).abs();
                worst = worst.max(e2 / e1);
            }
            if worst < 0.6 {
                Ok(format!("worst ratio {worst:.3}"))
            } else {
                Err(format!("worst ratio {worst:.3} >= 0.6"))
            }
        }));
    }
    list.push(check("finite differences on the sphere", || {
        let mut worst = 0.0_f64;
        for m in 0..=3 {
            let v = lib(eigenvalues_biaxial_fd(
                &EllipsoidSpec::sphere(),
                m,
                400,
                4,
                PoleBc::Auto,
            ))?;
            for (i, x) in v.iter().enumerate() {
                let l = m + i;
                worst =
                    worst.max((x - (l * (l + 1)) as f64).abs() / ((l * (l + 1)) as f64).max(1.0));
            }
        }
        within(worst, 2e-3)
    }));
    list.push(check("finite-difference convergence order", || {
        let spec = lib(EllipsoidSpec::from_axes(1.0, 1.0, 1.3))?;
        let rows = lib(convergence_study(
            &spec,
            1,
            &[100, 200, 400],
            3,
            PoleBc::Auto,
        ))?;
        let order = rows[2].order.clone().unwrap_or_default();
        let worst = order.iter().map(|p| (p - 2.0).abs()).fold(0.0, f64::max);
        within(worst, 0.15)
    }));
    list.push(check(
        "finite differences vs Galerkin on a spheroid",
        || {
            let spec = lib(EllipsoidSpec::from_axes(1.0, 1.0, 1.2))?;
            let mut fd = Vec::new();
            for m in 0..=3 {
                for v in lib(eigenvalues_biaxial_fd(
                    &spec,
                    m,
                    400,
                    4 - m.min(3),
                    PoleBc::Auto,
                ))? {
                    fd.push(v);
                    if m > 0 {
                        fd.push(v);
                    }
                }
            }
            fd.sort_by(f64::total_cmp);
            fd.truncate(9);
            let gal = lib(solve_triaxial(&spec, 14, 9))?.values;
            let worst = fd
                .iter()
                .zip(&gal)
                .map(|(a, b)| (a - b).abs() / b.max(1.0))
                .fold(0.0, f64::max);
            within(worst, 1e-4)
        },
    ));

    {
        let l_max = global.lmax.max(4);
        list.push(check(
            format!("Galerkin sphere exactness through l={}", l_max - 2),
            move || {
                let mats = lib(assemble_galerkin(&EllipsoidSpec::sphere(), l_max))?;
                let top = l_max - 2;
                let values = lib(eig_generalized(
                    &mats.stiffness,
                    &mats.mass,
                    (top + 1) * (top + 1),
                ))?
                .values;
                let mut worst = 0.0_f64;
                for l in 0..=top {
                    for v in &values[l * l..(l + 1) * (l + 1)] {
                        worst = worst.max((v - (l * (l + 1)) as f64).abs());
                    }
                }
                within(worst, 1e-10)
            },
        ));
    }
    list.push(check(
        "Galerkin spectrum invariant under axis permutations",
        || {
            let (a, b, c) = (1.08, 0.93, 1.0);
            let base = lib(solve_triaxial(
                &lib(EllipsoidSpec::from_axes(a, b, c))?,
                10,
                30,
            ))?
            .values;
            let mut worst = 0.0_f64;
            for p in [[c, a, b], [b, c, a]] {
                let v = lib(solve_triaxial(
                    &lib(EllipsoidSpec::from_axes(p[0], p[1], p[2]))?,
                    10,
                    30,
                ))?
                .values;
                worst = worst.max(max_sorted_diff(base.clone(), v));
            }
            within(worst, 1e-10)
        },
    ));
    list.push(check("Galerkin lowest eigenvalue is zero", || {
        let spec = lib(EllipsoidSpec::from_axes(1.3, 0.8, 1.1))?;
        within(lib(solve_triaxial(&spec, 10, 1))?.values[0].abs(), 1e-10)
    }));
    for l in 1..=2 {
        let l_max = global.lmax;
        list.push(check(
            format!("extrapolated Galerkin slopes, level {l}"),
            move || {
                let t = lib(slope_extraction(
                    0.0,
                    1.0,
                    -1.0,
                    &[0.1, 0.05, 0.025],
                    l,
                    l_max,
                ))?;
                let worst = t
                    .extrapolated
                    .iter()
                    .zip(&t.exact)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                within(worst, 5e-3)
            },
        ));
    }
    {
        let l_max = global.lmax;
        list.push(check(
            "Galerkin second eigenvalue at eps=0.2 near 1.69763",
            move || {
                let spec = lib(EllipsoidSpec::from_perturbation(1.0, -1.0, 0.0, 0.2))?;
                within(
                    (lib(solve_triaxial(&spec, l_max, 2))?.values[1] - 1.69763).abs(),
                    2e-2,
                )
            },
        ));
    }

    list.push(check("nodal counts, prolate l=4", move || {
        nodal_exemplar([0.0, 0.0, 1.0], ShapeCase::Prolate, grid)
    }));
    list.push(check("nodal counts, oblate l=4", move || {
        nodal_exemplar([1.0, 1.0, 0.0], ShapeCase::Oblate, grid)
    }));
    list.push(check("nodal counts, triaxial (1,2,3) l=4", move || {
        nodal_exemplar([1.0, 2.0, 3.0], ShapeCase::Triaxial, grid)
    }));
    list.push(check("nodal counts, random triaxial l<=3", move || {
        for p in triples(seed + 10, 3) {
            for l in 1..=3 {
                let c = lib(check_conjecture(p[0], p[1], p[2], l, grid[0], grid[1]))?;
                if !(c.all_match() && c.courant_ok()) || c.any_suspect() {
                    return Err(format!("{p:?} l={l}: {:?}", c.counts()));
                }
            }
        }
        Ok("3 specs".into())
    }));

    {
        let (bc, n) = (global.pole_bc.into(), global.grid);
        list.push(check(
            "long spheroid c=500: lowest value near m^2",
            move || {
                let spec = lib(EllipsoidSpec::from_axes(1.0, 1.0, 500.0))?;
                let mut worst = 0.0_f64;
                for m in 1..=5 {
                    let v = lib(eigenvalues_biaxial_fd(&spec, m, n, 1, bc))?[0];
                    worst = worst.max((v - (m * m) as f64).abs() / (m * m) as f64);
                }
                within(worst, 0.1)
            },
        ));
        list.push(check(
            "flat spheroid c=0.1: values near Bessel roots squared",
            move || {
                let spec = lib(EllipsoidSpec::from_axes(1.0, 1.0, 0.1))?;
                let mut worst = 0.0_f64;
                for m in 0..=5 {
                    let mut targets = if m == 0 { vec![0.0] } else { Vec::new() };
                    for k in 1..=6 {
                        for kind in [BesselKind::J, BesselKind::JPrime] {
                            targets.push(lib(bessel_root(m, k, kind))?.powi(2));
                        }
                    }
                    for x in lib(eigenvalues_biaxial_fd(&spec, m, n, 5, bc))? {
                        let rel = targets
                            .iter()
                            .map(|&t| if t == 0.0 { x.abs() } else { (x - t).abs() / t })
                            .fold(f64::INFINITY, f64::min);
                        worst = worst.max(rel);
                    }
                }
                within(worst, 0.05)
            },
        ));
    }
    list
}

/// Run every check; returns the result table and the number of failures.
pub fn run(global: &GlobalArgs, args: &VerifyArgs) -> Result<(Table, usize), CliError> {
    if global.axes.is_some() || global.perturb.is_some() {
        return Err(CliError::Usage("verify takes no ellipsoid".into()));
    }
    crate::commands::check_grid(global)?;
    let mut table = Table::new(vec!["id", "check", "pass", "detail"]);
    base_meta(&mut table, "verify", global, args);
    let mut failed = 0;
    for (id, c) in checks(global, args).into_iter().enumerate() {
        let outcome = (c.run)();
        let pass = outcome.is_ok();
        let detail = outcome.unwrap_or_else(|e| e);
        eprintln!(
            "{} {:>2} {}: {detail}",
            if pass { "PASS" } else { "FAIL" },
            id + 1,
            c.name
        );
        if !pass {
            failed += 1;
        }
        table.push(vec![
            (id + 1).into(),
            c.name.into(),
            pass.into(),
            detail.into(),
        ]);
    }
    table.meta("failed", serde_json::json!(failed));
    Ok((table, failed))
}
