use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_ellipsoid-lb");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn biaxial_table_default_rows() {
    let out = run(&["table1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines = data_lines(&text);
    assert_eq!(
        lines[0],
        "eps,l,m,lambda0,lambda1,lambda_numeric,slope,rel_err_percent"
    );
    // 9 rows per eps
    assert_eq!(lines.len(), 1 + 18);
    let first: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!((first[1], first[2]), (1.0, 0.0));
    assert!((first[4] + 2.4).abs() < 1e-12);
    assert!((first[5] - 1.7772).abs() < 5e-4);
    assert!(
        text.contains("# options: {\"alpha\":0.0,\"beta\":1.0,\"eps\":[0.1,0.05],\"levels\":3}")
    );
}

#[test]
fn zero_eps_is_a_usage_error() {
    let out = run(&["table1", "--eps", "0.1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("eps"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--axes", "1,1"]).status.code(), Some(1));
    // rejected by the library, not by argument parsing
    assert_eq!(
        run(&["spectrum", "--axes", "1,-1,1"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_files_are_deterministic_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (path, jobs) in [(&a, "1"), (&b, "2")] {
        let out = run(&[
            "spectrum",
            "--perturb",
            "0.3,-0.5,0.2,0.1",
            "--lmax",
            "8",
            "--count",
            "20",
            "--jobs",
            jobs,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    // the config echo differs only in --jobs
    let strip = |p: &std::path::Path| {
        fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# global"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.meta.json")).unwrap())
            .unwrap();
    assert!(side["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(side["meta"]["command"], "spectrum");

    let first = fs::read(&a).unwrap();
    run(&[
        "spectrum",
        "--perturb",
        "0.3,-0.5,0.2,0.1",
        "--lmax",
        "8",
        "--count",
        "20",
        "--jobs",
        "1",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(first, fs::read(&a).unwrap());
}

#[test]
fn json_output_parses() {
    let out = run(&[
        "--format",
        "json",
        "spectrum",
        "--perturb",
        "0,1,-1,0.1",
        "--method",
        "perturbation",
        "--m-max",
        "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1 + 3 + 5);
    let l2: Vec<f64> = rows
        .iter()
        .filter(|r| r["l"] == 2)
        .map(|r| r["lambda1"].as_f64().unwrap())
        .collect();
    assert!((l2[1] + 24.0 / 7.0).abs() < 1e-12);
}

#[test]
fn sweep_reports_crossings() {
    let out = run(&[
        "--grid",
        "200",
        "sweep-biaxial",
        "--samples",
        "9",
        "--count",
        "3",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# crossing_count: "));
    assert_eq!(data_lines(&text).len(), 1 + 9 * 5 * 3);
}

#[test]
fn nodal_rows_and_graymaps() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("pgm");
    let out = run(&[
        "nodal",
        "--l-max",
        "2",
        "--nodal-grid",
        "120x240",
        "--pgm",
        pgm.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines.len(), 1 + 3 + 5);
    assert!(lines[1..]
        .iter()
        .all(|l| l.contains(",triaxial,") && l.contains(",true,")));
    assert_eq!(fs::read_dir(&pgm).unwrap().count(), 8);
    assert_eq!(run(&["nodal", "--l-max", "9"]).status.code(), Some(1));
}

#[test]
fn triaxial_table_single_eps_from_perturb() {
    let out = run(&[
        "--perturb",
        "0,1,-1,0.1",
        "--lmax",
        "10",
        "table2",
        "--levels",
        "1",
        "--richardson-eps",
        "0.1,0.05",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines.len(), 1 + 3);
    for l in &lines[1..] {
        let cells: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cells[7] < 0.3);
    }
}
