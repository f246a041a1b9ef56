//! End-to-end checks of the command-line surface: exit codes, JSON
//! output, pipelines between subcommands, and determinism.

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;

fn starret() -> Command {
    Command::cargo_bin("starret").unwrap()
}

fn write_json(dir: &tempdir::TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path
}

mod tempdir {
    //! Minimal scoped temporary directory.
    use std::path::{Path, PathBuf};

    pub struct TempDir(PathBuf);

    impl TempDir {
        pub fn new(tag: &str) -> Self {
            let path = std::env::temp_dir().join(format!(
                "starret-cli-{}-{}",
                tag,
                std::process::id()
            ));
            std::fs::create_dir_all(&path).unwrap();
            TempDir(path)
        }
        pub fn path(&self) -> &Path {
            &self.0
        }
    }

    impl Drop for TempDir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

fn s3_group() -> Value {
    json!({
        "schema": "group/1",
        "degree": 3,
        "generators": ["(0 1 2)", "(0 1)"],
    })
}

fn s3_transposition_datum() -> Value {
    json!({
        "schema": "ramification-datum/1",
        "group": s3_group(),
        "classes": ["(0 1)", "(0 1)", "(0 1)", "(0 1)"],
    })
}

fn c3xc3_triangle_datum() -> Value {
    json!({
        "schema": "ramification-datum/1",
        "group": {
            "schema": "group/1",
            "degree": 6,
            "generators": ["(0 1 2)", "(3 4 5)"],
        },
        "classes": ["(0 1 2)", "(3 4 5)", "(0 2 1)(3 5 4)"],
    })
}

fn stdout_json(cmd: &mut Command) -> Value {
    let out = cmd.output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn rh_genus_and_hurwitz_dim() {
    starret()
        .args(["rh-genus", "--order", "6", "--signature", "2,2,2,2,2,2,3,3,3,3"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"genus\": 12"));
    starret()
        .args(["hurwitz-dim", "--genus", "0", "--cusps", "4"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"dimension\": 1"));
    // entries below 2 are rejected as validation errors
    starret()
        .args(["rh-genus", "--order", "6", "--signature", "1,2"])
        .assert()
        .code(3);
}

#[test]
fn subdivide_branch_count_pipeline() {
    let dir = tempdir::TempDir::new("pipeline");
    let graph = dir.path().join("chain.json");
    starret()
        .args(["subdivide", "--e", "6", "--e-prime", "9", "--p", "3"])
        .arg("--out")
        .arg(&graph)
        .assert()
        .success()
        .stdout(predicate::str::is_empty());

    // unstabilized chain is rejected by the counting formula
    starret()
        .args(["branch-count"])
        .arg(&graph)
        .assert()
        .code(3)
        .stderr(predicate::str::contains("stable"));

    // with stabilization the count is 4
    starret()
        .args(["branch-count", "--stabilize"])
        .arg(&graph)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"n\": 4"));

    // stabilize emits a graph document that feeds straight back in
    let stable = dir.path().join("stable.json");
    starret()
        .args(["stabilize"])
        .arg(&graph)
        .arg("--out")
        .arg(&stable)
        .assert()
        .success();
    starret()
        .args(["branch-count"])
        .arg(&stable)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"n\": 4"));

    // and renders as DOT with group labels
    starret()
        .args(["export-dot"])
        .arg(&graph)
        .assert()
        .success()
        .stdout(predicate::str::contains("C6").and(predicate::str::contains("C9")));
}

#[test]
fn check_hm_accepts_transposition_datum() {
    let dir = tempdir::TempDir::new("hm");
    let datum = write_json(&dir, "datum.json", &s3_transposition_datum());
    starret()
        .args(["check-hm"])
        .arg(&datum)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"hm\": true"));
    starret()
        .args(["check-mumford-type"])
        .arg(&datum)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"mumford_type\": true"));
    starret()
        .args(["check-genus-system", "--genus", "0"])
        .arg(&datum)
        .assert()
        .success()
        .stdout(predicate::str::contains("\"exists\": true"));
}

#[test]
fn mumford_schwarz_exit_codes() {
    let dir = tempdir::TempDir::new("schwarz");
    let datum = write_json(&dir, "triangle.json", &c3xc3_triangle_datum());
    starret()
        .args(["check-mumford-schwarz", "--p", "7"])
        .arg(&datum)
        .assert()
        .code(1)
        .stdout(predicate::str::contains("Excluded"));
    starret()
        .args(["check-mumford-schwarz", "--p", "3"])
        .arg(&datum)
        .assert()
        .code(2)
        .stdout(predicate::str::contains("PossibleInfiniteTriangle"));
    // non-prime p is a validation error
    starret()
        .args(["check-mumford-schwarz", "--p", "4"])
        .arg(&datum)
        .assert()
        .code(3);
}

#[test]
fn realize_s3_and_determinism() {
    let mut first = starret();
    first.args(["realize", "--group", "S3", "--p", "2"]);
    let v = stdout_json(&mut first);
    assert_eq!(v["cover_genus"], json!(12));
    assert_eq!(v["delta_connected"], json!(true));

    let a = starret()
        .args(["realize", "--group", "S3", "--p", "2"])
        .output()
        .unwrap();
    let b = starret()
        .args(["realize", "--group", "S3", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout, "output must be byte-identical across runs");
}

#[test]
fn realize_full_aut_q8() {
    let mut cmd = starret();
    cmd.args(["realize-full-aut", "--group", "Q8", "--p", "2"]);
    let v = stdout_json(&mut cmd);
    let genus = v["base_genus"].as_u64().unwrap();
    let cusps = v["signature"].as_array().unwrap().len() as u64;
    for (g, n) in [(2, 0), (1, 2), (1, 1), (0, 4), (0, 3)] {
        assert_ne!((genus, cusps), (g, n));
    }
}

#[test]
fn paste_pipeline_exit_codes() {
    let dir = tempdir::TempDir::new("paste");
    // the order-2 and order-3 subgroups of C6, written at degree 6 so
    // they embed in the ambient group
    let h2 = write_json(
        &dir,
        "h2.json",
        &json!({"schema": "group/1", "degree": 6, "generators": ["(0 3)(1 4)(2 5)"]}),
    );
    let h3 = write_json(
        &dir,
        "h3.json",
        &json!({"schema": "group/1", "degree": 6, "generators": ["(0 2 4)(1 3 5)"]}),
    );
    let c2 = dir.path().join("c2.json");
    let c3 = dir.path().join("c3.json");
    starret()
        .args(["realize", "--group"])
        .arg(&h2)
        .args(["--p", "2", "--out"])
        .arg(&c2)
        .assert()
        .success();
    starret()
        .args(["realize", "--group"])
        .arg(&h3)
        .args(["--p", "3", "--out"])
        .arg(&c3)
        .assert()
        .success();
    // C2 and C3 generate C6: connected paste, exit 0
    starret()
        .args(["paste"])
        .arg(&c2)
        .arg(&c3)
        .args(["--group", "C6"])
        .assert()
        .success()
        .stdout(predicate::str::contains("\"delta_connected\": true"));
    // C2 alone does not generate C6: disconnected paste, exit 1
    starret()
        .args(["paste"])
        .arg(&c2)
        .arg(&c2)
        .args(["--group", "C6"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("\"delta_connected\": false"));
}

#[test]
fn bad_inputs_are_validation_errors() {
    starret()
        .args(["realize", "--group", "NoSuchGroup", "--p", "2"])
        .assert()
        .code(3);
    starret()
        .args(["realize", "--group", "S3", "--p", "4"])
        .assert()
        .code(3);
    let dir = tempdir::TempDir::new("badjson");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    starret().args(["branch-count"]).arg(&bad).assert().code(3);
}
