use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

fn tomostar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tomostar"))
        .args(args)
        .env_remove("TOMOSTAR_SEED")
        .output()
        .expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<Vec<f64>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().expect("column header");
    lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn first_fock_tomogram_vanishes_at_half_h() {
    let out = tomostar(&[
        "--convention",
        "paper",
        "tomogram",
        "--state",
        "fock:1",
        "--mu",
        "0",
        "--nu",
        "0",
        "--x-min",
        "0.5",
        "--x-max",
        "0.5",
        "--count",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    assert!(rows[0][1].abs() < 1e-12, "{:?}", rows[0]);
}

#[test]
fn vacuum_tomogram_at_origin_is_one() {
    let out = tomostar(&[
        "tomogram", "--state", "fock:0", "--mu", "0", "--nu", "0", "--x-min", "0", "--x-max", "0", "--count", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("# tomostar 0.1.0 tomogram convention=standard hbar=1"));
    assert!((csv_rows(&out)[0][1] - 1.0).abs() < 1e-12);
}

#[test]
fn plane_wave_tomogram_at_zero_radius() {
    let out = tomostar(&[
        "tomogram",
        "--state",
        "planewave:1,0",
        "--mu",
        "2",
        "--nu",
        "0",
        "--x-min",
        "0",
        "--x-max",
        "0",
        "--count",
        "1",
    ]);
    let row = &csv_rows(&out)[0];
    assert!((row[1] - PI * 2f64.cos()).abs() < 1e-12);
    assert!((row[2] - PI * 2f64.sin()).abs() < 1e-12);
}

#[test]
fn kernel_points_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.json");
    fs::write(
        &points,
        "[[1,0,0, 2,0,0, 0.5,0,0], [0.3,0.1,-0.2, 1.1,0.4,0.0, 0.7,-0.3,0.2]]",
    )
    .unwrap();
    let out = tomostar(&[
        "--hbar",
        "0.4",
        "kernel",
        points.to_str().unwrap(),
        "--kernel",
        "quantum",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}

#[test]
fn malformed_points_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("bad.json");
    fs::write(&points, "[1,2").unwrap();
    let out = tomostar(&["kernel", points.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn negative_radius_is_a_domain_error() {
    let out = tomostar(&[
        "tomogram",
        "--state",
        "fock:0",
        "--mu",
        "0",
        "--nu",
        "0",
        "--x-min=-1",
        "--x-max",
        "1",
        "--count",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_of_range_h_is_a_domain_error() {
    let out = tomostar(&[
        "--hbar=-1",
        "tomogram",
        "--state",
        "fock:0",
        "--mu",
        "0",
        "--nu",
        "0",
        "--x-min",
        "0",
        "--x-max",
        "1",
        "--count",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn too_few_quadrature_nodes_is_a_usage_error() {
    let out = tomostar(&[
        "--nodes", "1", "tomogram", "--state", "fock:0", "--mu", "0", "--nu", "0", "--x-min", "0", "--x-max", "1",
        "--count", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(tomostar(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sweep_rows_cover_the_grid() {
    let out = tomostar(&[
        "sweep-hbar",
        "--triple",
        "1,0,0,2,0,0,0.5,0,0",
        "--h-min=-0.5",
        "--h-max",
        "0.5",
        "--count",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0][0], -0.5);
    assert_eq!(rows[4][0], 0.5);
    assert!(rows.iter().all(|r| r.len() == 5));
}

#[test]
fn sweep_rejects_h_at_one() {
    let out = tomostar(&[
        "sweep-hbar",
        "--triple",
        "1,0,0,2,0,0,0.5,0,0",
        "--h-min",
        "0",
        "--h-max",
        "1",
        "--count",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_tomogram_suite_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = tomostar(&[
        "--seed",
        "7",
        "--out",
        report.to_str().unwrap(),
        "verify",
        "--suites",
        "tomogram,kernels",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["all_passed"], true);
    assert_eq!(doc["suites"].as_array().unwrap().len(), 2);
}
