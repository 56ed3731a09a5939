use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name)
}

fn run(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_necklace"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("NECKLACE_THREADS", t),
        None => cmd.env_remove("NECKLACE_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args, None).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all, None);
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(name: &str) -> String {
    input(name).to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["frobenius-check", &path("group-z2.json")]), 0);
    assert_eq!(code(&["frobenius-check", &path("group-z2-corrupted.json")]), 1);
    assert_eq!(code(&["frobenius-check", &path("malformed.json")]), 2);
    assert_eq!(code(&["frobenius-check", &path("no-such-file.json")]), 2);
    assert_eq!(code(&["master-check", &path("frobenius-s3.json")]), 0);
    assert_eq!(code(&["master-check", &path("dual-numbers-n3.json")]), 0);
    assert_eq!(code(&["master-check", &path("group-z2-corrupted.json")]), 1);
    assert_eq!(code(&["exp-check", &path("group-z2.json")]), 0);
    assert_eq!(code(&["stringy-validate", &path("matrix-2-objects.json")]), 0);
    assert_eq!(code(&["graphs-homology", "--parity", "2"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn corrupted_table_reports_a_residual() {
    let reports = json(&["master-check", &path("group-z2-corrupted.json")]);
    let residual: u64 = reports.as_array().unwrap().iter().map(|r| r["residual_terms"].as_u64().unwrap()).sum();
    assert!(residual > 0);
}

#[test]
fn bracket_and_cobracket_values() {
    let b = json(&["necklace-bracket", &path("bracket-xy.json")]);
    assert_eq!(b[0]["details"]["result"], serde_json::json!([{"coeff": "-1/1", "word": [0, 0, 1, 1]}]));
    let c = json(&["necklace-cobracket", &path("cobracket-xayb.json")]);
    assert_eq!(c[0]["details"]["terms"], 2);
}

#[test]
fn graphs_homology_table() {
    let h = json(&["graphs-homology", "--jmax", "3", "--parity", "0"]);
    assert_eq!(h[0]["details"]["table"]["homology"], serde_json::json!([1, 0, 0]));
    let e = json(&["graphs-enumerate", "--jmax", "2", "--list"]);
    let counts = e[0]["details"]["counts"].as_array().unwrap();
    let orientable: u64 = counts.iter().map(|c| c["orientable"].as_u64().unwrap()).sum();
    assert_eq!(orientable as usize, e[0]["details"]["graphs"].as_array().unwrap().len());
}

#[test]
fn oracle_without_input() {
    assert_eq!(code(&["cyclic-oracle", "--kmax", "2"]), 0);
}

#[test]
fn fixtures_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    assert_eq!(code(&["bv-suite", "--trials", "4", "--seed", "3", "--fixtures", &d]), 0);
    let text = std::fs::read_to_string(dir.path().join("bv-suite.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["seed"] == 3));
}

#[test]
fn bad_thread_cap_is_an_input_error() {
    let out = run(&["cyclic-oracle", "--kmax", "1"], Some("many"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic_across_thread_caps() {
    let one = run(&["selftest", "--seed", "7", "--format", "json"], Some("1"));
    let four = run(&["selftest", "--seed", "7", "--format", "json"], Some("4"));
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stdout));
    assert_eq!(four.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, four.stdout);
}
