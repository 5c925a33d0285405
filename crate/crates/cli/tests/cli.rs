use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauge-coho"))
        .args(args)
        .env_remove("GAUGE_COHO_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn poincare_json_coefficients() {
    let v = json(&[
        "poincare",
        "--n",
        "2",
        "--k",
        "1",
        "--max-weight",
        "4",
        "--json",
    ]);
    assert_eq!(v["coefficients"], serde_json::json!([1, 2, 4, 6, 9]));
    assert_eq!(v["leray_hirsch"], v["coefficients"]);
    assert_eq!(v["spec"]["kind"], "gauge");
    assert_eq!(
        v["degrees"][4]["divisors"]
            .as_array()
            .unwrap()
            .last()
            .unwrap(),
        2
    );
}

#[test]
fn reduce_prints_normal_form_then_torsion() {
    let out = run(&["reduce", "--n", "1", "--k", "2", "--max-weight", "4", "x2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "c1^2");
    assert_eq!(lines[1], "torsion at weight 2: 1 mod 2");
}

#[test]
fn reduce_kills_relations() {
    let h2 = "-c1*x1 + c2 + x1^2 - 2*x2";
    let out = run(&["reduce", "--n", "2", "--k", "1", h2]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn multiply_matches_reduce_of_product() {
    let a = run(&["multiply", "--n", "2", "--k", "3", "c1 + x1", "c2 - x1"]);
    let b = run(&[
        "reduce",
        "--n",
        "2",
        "--k",
        "3",
        "c1*c2 - c1*x1 + c2*x1 - x1^2",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn suspend_examples() {
    let out = run(&["suspend", "--k", "5", "c1*c2"]);
    assert_eq!(stdout(&out).trim(), "5*c1^2 - c1*x1 + 5*c2");
    let out = run(&["suspend", "--k", "1", "--loop", "c3"]);
    assert_eq!(stdout(&out).trim(), "x1^2 - 2*x2");
}

#[test]
fn present_lists_relations() {
    let v = json(&[
        "present",
        "--n",
        "2",
        "--k",
        "1",
        "--max-weight",
        "3",
        "--json",
    ]);
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 2);
    assert_eq!(rels[0]["name"], "h2");
    assert_eq!(rels[0]["relation"], "-c1*x1 + c2 + x1^2 - 2*x2");
    let v = json(&[
        "present",
        "--bott",
        "--n",
        "2",
        "--max-weight",
        "2",
        "--json",
    ]);
    assert_eq!(v["relations"][0]["relation"], "y1^2 - 2*y2");
    assert_eq!(v["spec"]["k"], Value::Null);
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--n",
        "2",
        "--k",
        "-1..1",
        "--max-weight",
        "3",
        "--modulus",
        "0,5",
        "--json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["spec"]["k"], serde_json::json!([-1, 0, 1]));
    assert!(v.get("elapsed").is_none());
}

#[test]
fn verify_flags_rank_one() {
    let out = run(&[
        "verify",
        "--n",
        "1",
        "--k",
        "0",
        "--max-weight",
        "2",
        "--modulus",
        "0",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["overall"], "pass");
    let flagged: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "flagged")
        .collect();
    assert!(!flagged.is_empty());
    assert!(flagged
        .iter()
        .all(|c| c["detail"].as_str().unwrap().contains("open question")));
}

#[test]
fn verify_exits_nonzero_on_failed_checks() {
    // Weight 4 of Gauge(2, 0) carries a Z/2.
    let out = run(&[
        "verify",
        "--n",
        "2",
        "--k",
        "0",
        "--max-weight",
        "4",
        "--modulus",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL integral_freeness"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--k", "3..1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--k", ""]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--modulus", "4"]).status.code(), Some(2));
    assert_eq!(
        run(&["basis", "--n", "2", "--modulus", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn compute_errors_exit_one() {
    let out = run(&["reduce", "--n", "2", "x1 +"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["reduce", "--n", "2", "--max-weight", "3", "x4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let cold = json(&[
        "--cache-dir",
        path,
        "basis",
        "--n",
        "2",
        "--k",
        "1",
        "--max-weight",
        "5",
        "--json",
    ]);
    let listing = json(&["--cache-dir", path, "cache", "inspect", "--json"]);
    let entries = listing["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert!(entries.iter().all(|e| e["valid"] == true));
    assert_eq!(entries[0]["record"]["presentation"]["kind"], "gauge");

    let warm = json(&[
        "--cache-dir",
        path,
        "basis",
        "--n",
        "2",
        "--k",
        "1",
        "--max-weight",
        "5",
        "--json",
    ]);
    assert_eq!(cold, warm);

    let cleared = json(&["--cache-dir", path, "cache", "clear", "--json"]);
    assert_eq!(cleared["removed"], 6);
    let listing = json(&["--cache-dir", path, "cache", "inspect", "--json"]);
    assert!(listing["entries"].as_array().unwrap().is_empty());
}

#[test]
fn cache_requires_a_directory() {
    assert_eq!(run(&["cache", "inspect"]).status.code(), Some(2));
}
