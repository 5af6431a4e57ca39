//! End-to-end checks of the command-line interface: formats, exit codes,
//! and determinism of the JSON output.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_biscount")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn write_k22(dir: &Path) -> String {
    let path = dir.join("k22.txt");
    std::fs::write(&path, "2 2\n0 0\n0 1\n1 0\n1 1\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn count_exact_small_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_k22(dir.path());
    let out = run(&["count", "--input", &path, "--epsilon", "0.5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "7");
}

#[test]
fn count_json_fields_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let status = Command::new(bin())
        .args(["gen", "--n", "12", "--d", "7", "--seed", "3", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let path = path.to_str().unwrap();
    let args = [
        "count", "--input", path, "--epsilon", "0.4", "--seed", "5", "--t0", "2", "--force",
        "--json",
    ];
    let a = run(&args);
    assert!(a.status.success());
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for field in [
        "estimate",
        "log2_estimate",
        "epsilon",
        "method",
        "t0",
        "threshold_rank",
        "family_size",
        "seed",
        "wall_ms",
    ] {
        assert!(v.get(field).is_some(), "missing field {field}");
    }
    assert_eq!(v["method"], "fpras");
    assert_eq!(v["seed"], 5);
    let b = run(&args);
    let strip = |out: &Output| {
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .filter(|l| !l.contains("wall_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn gen_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let status = Command::new(bin())
        .args(["gen", "--n", "5", "--d", "3", "--seed", "9", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let out = run(&["verify", "--input", path.to_str().unwrap(), "--t0", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));
}

#[test]
fn input_errors_exit_2() {
    let out = run(&["count", "--input", "/nonexistent/file", "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "2 2\n0 0\n0 1\n1 0\n1 0\n").unwrap(); // duplicate edge
    let out = run(&["count", "--input", path.to_str().unwrap(), "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let out = run(&["gen", "--n", "2", "--d", "5", "--seed", "0", "--out", "/tmp/x.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    // An epsilon far below the instance scale forces enormous sample counts;
    // with the pipeline forced on, the sampling budget check trips.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    Command::new(bin())
        .args(["gen", "--n", "12", "--d", "7", "--seed", "1", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    let out = run(&[
        "count",
        "--input",
        path.to_str().unwrap(),
        "--epsilon",
        "0.000001",
        "--t0",
        "2",
        "--force",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exact_flag_bypasses_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_k22(dir.path());
    let out = run(&["count", "--input", &path, "--epsilon", "0.5", "--exact", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["estimate"], "7");
    assert_eq!(v["method"], "exact");
}
