//! End-to-end smoke tests for the binary against the shipped fixtures.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarity"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_lattice_accepts_fixtures() {
    for f in ["chain2.json", "chain3.json", "boolean2.json", "m3.json", "n5.json"] {
        let out = run(&["check-lattice", &fixture(f)]);
        assert_eq!(code(&out), 0, "{f}: {}", stdout(&out));
    }
}

#[test]
fn check_frame_distinguishes_the_two_figures() {
    let ok = run(&["check-frame", &fixture("fig1_F.json")]);
    assert_eq!(code(&ok), 0);
    let bad = run(&["check-frame", &fixture("fig1_Fprime.json")]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("s") && stdout(&bad).contains("t"));
}

#[test]
fn check_lf_passes_on_fig1() {
    let out = run(&["check-lf", &fixture("fig1_F.json")]);
    assert_eq!(code(&out), 0);
}

#[test]
fn stable_sets_of_fig1_are_five() {
    let out = run(&["--json", "stable-sets", &fixture("fig1_F.json")]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 5);
}

#[test]
fn complex_algebra_and_embeddings() {
    let ca = run(&["--json", "complex-algebra", &fixture("fig1_F.json")]);
    assert_eq!(code(&ca), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&ca)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);

    let h = run(&["embed-h", &fixture("m3.json")]);
    assert_eq!(code(&h), 0);
    let k = run(&["embed-k", &fixture("fig1_F.json")]);
    assert_eq!(code(&k), 0);
}

#[test]
fn canonical_frame_of_chain3() {
    let out = run(&["--json", "canonical-frame", &fixture("chain3.json")]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}

#[test]
fn check_bm_on_the_counterexample_map() {
    let out = run(&["--json", "check-bm", &fixture("fig1_map.json")]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["surjective"], true);
}

#[test]
fn demo_counterexample_verifies() {
    let out = run(&["--json", "demo-counterexample"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["image_doubly_ordered"], false);
}

#[test]
fn sweep_writes_a_deterministic_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "--json",
        "sweep",
        "--property",
        "theorem3_canonical_is_lattice_frame",
        "--corpus",
        "exhaustive:4",
        "--out",
        path.to_str().unwrap(),
    ];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    let first = std::fs::read(&path).unwrap();
    let b = run(&args);
    assert_eq!(code(&b), 0);
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn input_errors_exit_2() {
    let out = run(&["check-lattice", "/no/such/file.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cap_flag_rejects_oversized_work() {
    let out = run(&["--cap", "2", "stable-sets", &fixture("fig1_F.json")]);
    assert_eq!(code(&out), 2);
}
