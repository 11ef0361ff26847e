//! End-to-end runs of the binary: exit codes, JSON shapes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_oliverkit"));
    c.env_remove("OLIVERKIT_ORDER_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn oliver_verdicts() {
    let v = stdout_json(&run(&["oliver", "A5"]));
    assert_eq!(v, serde_json::json!({ "oliver": true }));

    let v = stdout_json(&run(&["oliver", "S4"]));
    assert_eq!(v["oliver"], false);
    assert_eq!(v["witness"]["P"], "V4");
    assert_eq!(v["witness"]["H"], "A4");
}

#[test]
fn classify_reports() {
    let v = stdout_json(&run(&["classify", "C4"]));
    assert_eq!(v["class_label"], "P");
    assert_eq!(v["order"], 4);
    assert!(v.get("six_class_label").is_none());

    let v = stdout_json(&run(&["classify", "Dih15"]));
    assert_eq!(v["class_label"], "D");
    assert_eq!(v["six_class_label"], "D");
    assert_eq!(v["ko_recipe_id"], 6);
}

#[test]
fn matched_memberships() {
    let v = stdout_json(&run(&["matched", "C6", "--flavor", "complex"]));
    assert_eq!(v["matched"], true);
    assert_eq!(v["witness"]["v1"].as_array().unwrap().len(), 6);

    let v = stdout_json(&run(&["matched", "C6", "--flavor", "real"]));
    assert_eq!(v["matched"], false);
    assert!(v.get("witness").is_none());

    let v = stdout_json(&run(&["matched", "Dih15", "--flavor", "real", "--oracle"]));
    assert_eq!(v["matched"], true);
    assert_eq!(v["oracle_agrees"], true);

    let out = run(&["matched", "C6", "--flavor", "octonionic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chartab_shape() {
    let v = stdout_json(&run(&["chartab", "S3"]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["modulus"], 6);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["characters"].as_array().unwrap().len(), 3);
    assert_eq!(v["characters"][0]["degree"], 1);
    // Each value is a root-of-unity support list: [exponent, multiplicity]
    // pairs for zeta = exp(2*pi*i/modulus). The trivial character is all
    // [[0, 1]]; the sign character takes [[0, -1]] on the transpositions.
    assert!(v["characters"][2]["values"][2].is_array());
    assert_eq!(v["characters"][0]["values"][0], serde_json::json!([[0, 1]]));
}

#[test]
fn realize_paths() {
    let v = stdout_json(&run(&["realize", "disk_fixed_set", "--chi-f", "8", "A5"]));
    assert_eq!(v["congruence_ok"], true);
    assert_eq!(v["n_g"]["value"], 1);

    // Unknown modulus and no --ng: exit 4.
    let out = run(&["realize", "fixed_point_free", "--chi-yg", "1", "C6"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!String::from_utf8_lossy(&out.stderr).trim().is_empty());

    // Supplied modulus unlocks the verdict.
    let v = stdout_json(&run(&[
        "realize", "fixed_point_free", "--chi-yg", "6", "--ng", "3", "C6",
    ]));
    assert_eq!(v["congruence_ok"], true);

    // Missing required characteristic: exit 2.
    let out = run(&["realize", "disk_fixed_set", "A5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["realize", "warp_drive", "--chi-f", "1", "A5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes_for_bad_input() {
    let out = run(&["classify", "Zork9"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);

    let out = run(&["classify", "--bogus-flag", "C6"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["classify", "--order-cap", "4", "C6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_cap_override() {
    let out = bin()
        .args(["classify", "C6"])
        .env("OLIVERKIT_ORDER_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // An explicit flag beats the environment.
    let out = bin()
        .args(["classify", "--order-cap", "10", "C6"])
        .env("OLIVERKIT_ORDER_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_contract() {
    // Empty range: exit 0, no output.
    let out = run(&["sweep"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    // A range of prime-power groups only: every membership false.
    let out = run(&["sweep", "C:2..5"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    for v in &lines {
        assert_eq!(v["matched_complex"], false);
        assert_eq!(v["matched_selfconjugate"], false);
        assert_eq!(v["matched_real"], false);
        assert_eq!(v["lemma_consistent"], true);
    }

    // Products and extras; output sorted by group label.
    let out = run(&["sweep", "C:2..6", "S:3..3", "--with-products", "--with-extras"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let names: Vec<String> = text
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).unwrap();
            v["group"].as_str().unwrap().to_string()
        })
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"C6xS3".to_string()));
    assert!(names.contains(&"Dic3".to_string()));

    // Cap-exceeded entries are skipped with a warning, not an error.
    let out = run(&["sweep", "C:2..40", "--order-cap", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let warnings = String::from_utf8_lossy(&out.stderr);
    assert!(warnings.contains("C31"));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 29);

    // Malformed term: exit 2.
    let out = run(&["sweep", "C-2..40"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gcw_files() {
    let dir = std::env::temp_dir();
    let xp: PathBuf = dir.join("oliverkit_cli_test_x.json");
    let yp: PathBuf = dir.join("oliverkit_cli_test_y.json");
    std::fs::write(
        &xp,
        r#"{"group": "S3", "cells": [
            {"stabilizer": ["(0 1 2)", "(1 2)"], "dimension": 0, "count": 1},
            {"stabilizer": ["()"], "dimension": 1, "count": 1}
        ]}"#,
    )
    .unwrap();
    std::fs::write(
        &yp,
        r#"{"group": "S3", "cells": [
            {"stabilizer": ["(0 1 2)", "(1 2)"], "dimension": 0, "count": 1}
        ]}"#,
    )
    .unwrap();

    let v = stdout_json(&run(&["gcw", xp.to_str().unwrap()]));
    assert_eq!(v["group"], "S3");
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries[0]["chi"], -5);
    assert_eq!(entries[0]["structure"], "1");

    // Wedging a single fixed point on changes nothing.
    let w = stdout_json(&run(&["gcw", xp.to_str().unwrap(), "--wedge", yp.to_str().unwrap()]));
    assert_eq!(w, v);

    let out = run(&["gcw", dir.join("oliverkit_cli_test_missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["classify", "S4"],
        vec!["matched", "Dih15", "--flavor", "complex"],
        vec!["sweep", "C:2..10", "Dih:3..6", "--with-products"],
        vec!["chartab", "Dih5"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn text_format_carries_anchors() {
    let out = run(&["classify", "S4", "--format", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("class_label: A  ["));
    assert!(text.contains("oliver: false  [chain criterion"));
    // Every line explains its field.
    for line in text.lines() {
        assert!(line.contains('['), "unexplained line: {line}");
    }

    let out = run(&["realize", "disk_fixed_set", "--chi-f", "1", "--format", "text", "S5"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("congruence_ok: true"));
    assert!(text.contains("cited_theorem:"));
}

#[test]
fn perm_spec_groups_work_end_to_end() {
    let v = stdout_json(&run(&["classify", "perm: (0 1 2), (1 2)(3 4 5 6) deg 7"]));
    assert_eq!(v["class_label"], "C");
    assert_eq!(v["order"], 12);
    assert_eq!(v["ko_recipe_id"], 5);
}
