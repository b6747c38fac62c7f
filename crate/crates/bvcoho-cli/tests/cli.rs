use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bvcoho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bvcoho")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn info_s3() {
    let out = bvcoho(&["info", "--group", "S3"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["order"], 6);
    let orders: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["centralizer_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![6, 3, 2]);
}

#[test]
fn info_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c2.json");
    std::fs::write(&f, r#"{"name": "Z2", "order": 2, "mult": [[0,1],[1,0]]}"#).unwrap();
    let v = json(&bvcoho(&["info", "--group", p(&f)]));
    assert_eq!(v["name"], "Z2");
    assert_eq!(v["abelian"], true);
}

#[test]
fn hochschild_dims_and_representatives() {
    let dir = tempfile::tempdir().unwrap();
    let out = bvcoho(&["cohomology", "--group", "S3", "--prime", "3", "--max-degree", "2", "--representatives", p(dir.path())]);
    assert!(out.status.success());
    assert_eq!(json(&out)["dims"], serde_json::json!([3, 1, 1]));
    let count = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(count, 5);
}

#[test]
fn centralizer_dims() {
    let out = bvcoho(&["cohomology", "--group", "S3", "--prime", "3", "--kind", "centralizer", "--rep", "b", "--max-degree", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["dims"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn cup_and_bracket_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let reps = dir.path().join("reps");
    assert!(bvcoho(&["cohomology", "--group", "C3", "--prime", "3", "--max-degree", "1", "--representatives", p(&reps)]).status.success());
    let x = reps.join("h1_0.json");
    let out = bvcoho(&["op", "cup", p(&x), p(&x), "--group", "C3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["degree"], 2);
    let br = bvcoho(&["op", "bracket", p(&x), p(&x), "--group", "C3"]);
    let bv = bvcoho(&["op", "bracket-bv", p(&x), p(&x), "--group", "C3"]);
    assert!(br.status.success() && bv.status.success());
    assert_eq!(json(&br)["degree"], 1);
    assert_eq!(json(&bv)["degree"], 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("info.json");
    let out = bvcoho(&["info", "--group", "C4", "--out", p(&f)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(v["order"], 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bvcoho(&["info", "--group", "nope.json"]).status.code(), Some(2));
    assert_eq!(bvcoho(&["cohomology", "--group", "S3", "--prime", "4", "--max-degree", "1"]).status.code(), Some(2));
    assert_eq!(bvcoho(&["cohomology", "--group", "S3", "--prime", "3", "--kind", "centralizer", "--max-degree", "1"]).status.code(), Some(2));
    assert_eq!(bvcoho(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn prime_mismatch_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"prime": 3, "group": "C3", "kind": "hochschild", "degree": 0, "values": [[[], [1, 0, 0]]]}"#).unwrap();
    std::fs::write(&b, r#"{"prime": 2, "group": "C3", "kind": "hochschild", "degree": 0, "values": [[[], [1, 0, 0]]]}"#).unwrap();
    let out = bvcoho(&["op", "cup", p(&a), p(&b), "--group", "C3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GF(2)"));
}

#[test]
fn verify_non_modular_prime_passes() {
    let out = bvcoho(&["verify-s3", "--prime", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn flipped_brackets_fail_verification() {
    let out = bvcoho(&["verify-s3", "--flip-bracket-sign", "--skip-v-squared", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert!(!v["failed"].as_array().unwrap().is_empty());
}
