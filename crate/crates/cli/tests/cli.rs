use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewsg")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn table_case5_minimal() {
    let out = run(&["table", "--case", "5", "--n", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0]["function"], "D");
    assert_eq!(gens[0]["weight"]["0"], serde_json::json!([1]));
    assert_eq!(gens[0]["weight"]["1"], serde_json::json!([1]));
    assert_eq!(gens[0]["weight"]["char"], 0);
}

#[test]
fn table_generator_counts() {
    for (args, count) in [
        (vec!["table", "--case", "7", "--n", "2", "--m", "2", "--l", "2"], 6),
        (vec!["table", "--case", "1", "--n", "2"], 4),
        (vec!["table", "--case", "2", "--n", "5"], 5),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["generators"].as_array().unwrap().len(), count, "{args:?}");
    }
}

#[test]
fn out_of_range_parameters_are_usage_errors() {
    let out = run(&["verify", "--case", "4", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}

#[test]
fn verify_case8_passes() {
    let out = run(&["verify", "--case", "8", "--n", "1", "--m", "1", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn verify_case3_records_the_divisibility_witness() {
    let out = run(&["verify", "--case", "3", "--n", "3", "--m", "1", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    let witnessed = checks
        .iter()
        .filter(|c| c["check"] == "irreducible")
        .any(|c| c["note"].as_str().unwrap_or("").contains("divisibility witness"));
    assert!(witnessed);
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["verify", "--case", "5", "--n", "1", "--m", "2", "--trials", "4", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spectrum_is_tsv_by_default() {
    let out = run(&["spectrum", "--case", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("weight\tcoefficients\tmultiplicity\tindecomposable"));
    assert_eq!(lines.filter(|l| l.ends_with("\ttrue")).count(), 3);
}

#[test]
fn canonical_rejects_spectral_cases() {
    let out = run(&["canonical", "--case", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn canonical_case5_reconstructs() {
    let out = run(&["canonical", "--case", "5", "--n", "2", "--m", "1", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["schema"], 1);
}

#[test]
fn every_json_command_carries_the_schema() {
    for args in [
        vec!["irreducible", "--case", "6", "--n", "3"],
        vec!["branch", "--case", "1", "--n", "3", "--weight", "1,0,1"],
        vec!["spectrum", "--case", "1", "--n", "2", "--format", "json"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["schema"], 1, "{args:?}");
    }
}
