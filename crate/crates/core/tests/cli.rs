use std::process::{Command, Output};

use serde_json::Value;

fn nsgp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsgp"))
        .args(args)
        .env_remove("NSGP_TIMEOUT_SECS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn assert_round_trip(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap(), text.trim_end());
    v
}

#[test]
fn info_for_gas_reports_formulas_and_oracles() {
    let out = nsgp(&["--gas", "5,2,3,2", "info", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_round_trip(&stdout(&out));
    assert_eq!(v["frobenius"], 27);
    assert_eq!(v["catenary"], 9);
    assert_eq!(v["tame"], 9);
    assert_eq!(v["omega"], 9);
    for row in v["closed_forms"].as_array().unwrap() {
        assert_eq!(row["equal"], true, "{row}");
    }
}

#[test]
fn info_for_generators() {
    let out = nsgp(&["--gens", "6,9,11", "info"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("catenary: 4"));
}

#[test]
fn all_of_n_is_refused() {
    let out = nsgp(&["--gens", "1", "info"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("S = ℕ: invariants undefined"));

    let out = nsgp(&["--gens", "1", "--frobenius-of-N=-1", "info"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("frobenius: -1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nsgp(&["info"]).status.code(), Some(2));
    assert_eq!(nsgp(&["--gens", "4,6", "info"]).status.code(), Some(2));
    assert_eq!(nsgp(&["--gens", "5,x", "info"]).status.code(), Some(2));
    assert_eq!(
        nsgp(&["--gens", "5,7", "--gas", "5,2,3,2", "info"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nsgp(&["--gens", "5,13,16", "lengths"]).status.code(),
        Some(2)
    );
    assert_eq!(
        nsgp(&["--gens", "5,13,16", "--n", "8", "lengths"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn rclasses_of_worked_example() {
    let out = nsgp(&[
        "--gens", "5,6,7,9", "--n", "18", "rclasses", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_round_trip(&stdout(&out));
    assert_eq!(v["count"], 2);
}

#[test]
fn factorizations_of_gas_element() {
    let out = nsgp(&["--gas", "5,2,3,2", "--n", "45", "factorizations"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.contains(&"(9,0,0)"));
    assert!(lines.contains(&"(0,1,2)"));
}

#[test]
fn non_member_has_no_factorizations() {
    let out = nsgp(&[
        "--gens",
        "5,13,16",
        "--n",
        "8",
        "factorizations",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_round_trip(&stdout(&out));
    assert_eq!(v["factorizations"], Value::Array(vec![]));
    assert_eq!(v["data_quality"], 0);
}

#[test]
fn truncation_is_flagged() {
    let out = nsgp(&[
        "--gens",
        "3,5,7",
        "--n",
        "200",
        "--max-factorizations",
        "10",
        "factorizations",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_round_trip(&stdout(&out));
    assert_eq!(v["truncated"], true);
    assert_eq!(v["data_quality"], 1);
    assert_eq!(v["factorizations"].as_array().unwrap().len(), 10);
    assert!(v["count"].as_u64().unwrap() > 10);
}

#[test]
fn element_alias_matches_direct_subcommand() {
    let a = nsgp(&["--gens", "6,9,20", "--n", "60", "element", "tame"]);
    let b = nsgp(&["--gens", "6,9,20", "--n", "60", "tame"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn graph_is_dot() {
    let out = nsgp(&["--gens", "5,6,7,9", "--n", "18", "graph"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph G_18 {"));
    assert!(text.trim_end().ends_with('}'));
    assert!(text.contains(" -- "));
}

#[test]
fn sweep_csv_passes() {
    let out = nsgp(&[
        "sweep",
        "--a",
        "3..8",
        "--h",
        "1..3",
        "--d",
        "1..5",
        "--checks",
        "catenary,tame",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("\"a\",\"h\",\"d\",\"x\",\"check\",\"formula\",\"oracle\",\"equal\""));
    assert!(!text.contains("\"false\""));
}

#[test]
fn sweep_single_tuple_all_checks() {
    let out = nsgp(&[
        "sweep", "--tuple", "8,2,3,3", "--checks", "all", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_round_trip(&stdout(&out));
    assert_eq!(v["summary"]["rows"], 11);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn sweep_with_only_skipped_tuples() {
    let out = nsgp(&["sweep", "--a", "4..4", "--d", "2..2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped=12"));
}

#[test]
fn sweep_timeout_is_a_failure() {
    let out = Command::new(env!("CARGO_BIN_EXE_nsgp"))
        .args(["sweep", "--tuple", "8,2,3,3", "--checks", "tame"])
        .env("NSGP_TIMEOUT_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
