//! End-to-end tests of the `spinsweep` binary and the CSV contract.

use std::fs;
use std::process::Command;

use spinsweep_cli::config::ExperimentConfig;
use spinsweep_cli::{compute_rows, data_rows, presets};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinsweep"))
}

#[test]
fn spectrum_single_point_to_stdout() {
    let out = bin()
        .args([
            "spectrum", "--model", "xy", "--n", "3", "--gamma", "1", "--lambda", "0", "--k", "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let cells: Vec<f64> = rows[0]
        .split(',')
        .map(|c| c.parse::<f64>().unwrap())
        .collect();
    assert!(text
        .lines()
        .any(|l| l == "gamma,lambda,e0,e1,e2,delta01,delta12,delta01_per_n"));
    assert_eq!(cells[0], 1.0); // gamma
    assert_eq!(cells[1], 0.0); // lambda
    assert!((cells[2] + 3.0).abs() < 1e-9);
    assert!((cells[3] + 3.0).abs() < 1e-9);
    assert!((cells[4] - 1.0).abs() < 1e-9);
    assert!(cells[5].abs() < 1e-9); // delta01
    assert!((cells[6] - 4.0).abs() < 1e-9); // delta12
}

#[test]
fn spectrum_rejects_sweep_specs() {
    let out = bin()
        .args([
            "spectrum", "--model", "xy", "--n", "3", "--gamma", "1", "--lambda", "0:1:5",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sweep"), "stderr: {err}");
}

#[test]
fn sweep_is_deterministic_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let path = dir.path().join(name);
        let status = bin()
            .args([
                "sweep", "--model", "xy", "--n", "4,5", "--gamma", "0:1:3", "--lambda", "0:2:4",
                "--k", "3", "--jobs", jobs, "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        data_rows(&fs::read_to_string(&path).unwrap())
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "4");
    let c = run("c.csv", "4");
    assert_eq!(a.len(), 2 * 3 * 4);
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn header_round_trips_to_identical_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let status = bin()
        .args([
            "sweep", "--model", "xy", "--n", "4", "--gamma", "0.5", "--schedule", "square",
            "--s", "0:1:5", "--k", "2", "--out",
        ])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&path).unwrap();
    let config = ExperimentConfig::from_header(&text).unwrap();
    let rows = compute_rows(&config, Some(2)).unwrap();
    let reformatted: Vec<String> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    assert_eq!(reformatted, data_rows(&text));
}

#[test]
fn evolve_trace_via_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let status = bin()
        .args([
            "evolve", "--model", "ising2d", "--rows", "2", "--cols", "2", "--schedule", "linear",
            "--T", "1", "--steps", "200", "--samples", "5", "--k", "2", "--out",
        ])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "s,lambda,e0,e1,f_ghz,f_p,f_subspace,norm_error"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    // lambda at s = 0 must be the tagged infinity, not a large float
    assert!(rows[0].split(',').nth(1).unwrap() == "inf");
    let f_p0: f64 = rows[0].split(',').nth(5).unwrap().parse().unwrap();
    assert!((f_p0 - 1.0).abs() < 1e-12);
}

#[test]
fn unknown_preset_fails_with_diagnostic() {
    let out = bin().args(["preset", "fig99"]).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown preset"), "stderr: {err}");
    assert!(err.contains("fig1b"), "stderr should list valid names: {err}");
}

#[test]
fn missing_required_flags_fail() {
    let out = bin()
        .args(["sweep", "--model", "xy", "--gamma", "1", "--lambda", "1"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
}

#[test]
fn fig2a_preset_produces_three_size_blocks() {
    let config = presets::preset("fig2a").unwrap();
    let rows = compute_rows(&config, None).unwrap();
    assert_eq!(config.columns, ["s", "n", "delta01", "delta12"]);
    assert_eq!(rows.len(), 3 * 201);
    let n_at = |i: usize| match rows[i][1] {
        spinsweep_cli::Value::Int(n) => n,
        _ => panic!("n column should be an integer"),
    };
    assert_eq!(n_at(0), 8);
    assert_eq!(n_at(201), 10);
    assert_eq!(n_at(402), 12);
    // delta01 closes in the ferromagnetic half of the sweep for every size
    for block in 0..3 {
        let last = &rows[block * 201 + 200];
        match last[2] {
            spinsweep_cli::Value::Float(d) => assert!(d.abs() < 1e-8, "delta01(s=1) = {d}"),
            _ => panic!(),
        }
    }
}
