//! End-to-end checks of the command-line interface: output schemas, exit
//! codes and format handling.

use serde_json::Value;
use std::process::{Command, Output};

fn grouplat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json document")
}

#[test]
fn eutaxy_verdicts_and_exit_codes() {
    let out = grouplat(&["eutaxy", "--group", "7"]);
    let doc = json_of(&out);
    assert_eq!(doc["verdict"], Value::Bool(true));
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["min_norm_sq"], "4/1");

    // A false verdict still exits 0.
    let out = grouplat(&["eutaxy", "--group", "6"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["verdict"], Value::Bool(false));

    // Invalid group spec exits 2.
    let out = grouplat(&["eutaxy", "--group", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = grouplat(&["eutaxy", "--group", "banana"]);
    assert_eq!(out.status.code(), Some(2));
    let out = grouplat(&["eutaxy", "--group", ""]);
    assert_eq!(out.status.code(), Some(2), "trivial group is rejected");
}

#[test]
fn build_and_minvec_documents() {
    let doc = json_of(&grouplat(&["build", "--group", "2,3"]));
    // 2,3 canonicalizes to C_6.
    assert_eq!(doc["group"], "C_6");
    assert_eq!(doc["n"], 6);
    assert_eq!(doc["rank"], 5);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 5);

    let doc = json_of(&grouplat(&["minvec", "--group", "5"]));
    assert_eq!(doc["count"], 10);
    assert_eq!(doc["min_norm_sq"], "4/1");
    let vectors = doc["vectors"].as_array().unwrap();
    assert_eq!(vectors.len(), 10);
    // Sorted lexicographically, so the first vector is the all-smallest.
    let first: Vec<i64> = vectors[0].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    let mut sorted = vectors.clone();
    sorted.sort_by_key(|v| v.to_string());
    assert_eq!(first.len(), 5);
}

#[test]
fn design_frame_and_optimality_documents() {
    let doc = json_of(&grouplat(&["design", "--group", "7"]));
    assert_eq!(doc["verdict"], Value::Bool(true));
    let doc = json_of(&grouplat(&["frame", "--group", "2,4"]));
    assert_eq!(doc["verdict"], Value::Bool(false));
    let doc = json_of(&grouplat(&["perfect", "--group", "9"]));
    assert_eq!(doc["verdict"], Value::Bool(true));
    assert_eq!(doc["perfection_rank"], 36);
    let doc = json_of(&grouplat(&["extreme", "--group", "7"]));
    assert_eq!(doc["extreme"], Value::Bool(true));
    // Order 6 confirms the eutaxy conjecture with explicit weights; order 4
    // refutes it (four minimal vectors span only two of three dimensions).
    let doc = json_of(&grouplat(&["eutactic", "--group", "6"]));
    assert_eq!(doc["verdict"], Value::Bool(true));
    assert_eq!(doc["weights"].as_object().unwrap().len(), 12);
    let doc = json_of(&grouplat(&["eutactic", "--group", "4"]));
    assert_eq!(doc["verdict"], Value::Bool(false));
}

#[test]
fn aut_and_dual_documents() {
    let doc = json_of(&grouplat(&["aut", "--group", "5"]));
    assert_eq!(doc["aut_order"], "240");
    assert_eq!(doc["subgroup_order"], "40");
    assert_eq!(doc["ratio"], "6");

    let doc = json_of(&grouplat(&["dual-check", "--group", "5"]));
    assert_eq!(doc["verdict"], Value::Bool(false));
    assert_eq!(doc["ambient_dual_min"], "4/5");
    assert_eq!(doc["coset_minima"].as_array().unwrap().len(), 5);
}

#[test]
fn survey_csv_and_json() {
    let out = grouplat(&["survey", "--max-order", "9", "--what", "aut-ratio"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group,ratio\n"));
    assert!(text.contains("C_5,6\n"), "the survey must contain the C_5 row");

    let out = grouplat(&["survey", "--max-order", "6", "--what", "minvec", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let c5 = rows.iter().find(|r| r["group"] == "C_5").unwrap();
    assert_eq!(c5["count"], "10");
    assert_eq!(c5["formula"], "10");

    // Counts below order 4 have no closed formula.
    let c3 = rows.iter().find(|r| r["group"] == "C_3").unwrap();
    assert_eq!(c3["formula"], "-");

    let out = grouplat(&["survey", "--max-order", "1", "--what", "eutaxy"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn format_restrictions() {
    let out = grouplat(&["eutaxy", "--group", "7", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2), "csv is survey-only");

    let out = grouplat(&["eutaxy", "--group", "7", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: true"));
}

#[test]
fn budget_exhaustion_exits_three() {
    // The eutaxy LP for the order-11 group runs for several seconds; a
    // one-second wall-clock budget must interrupt it.
    let out = grouplat(&["eutactic", "--group", "11", "--budget-seconds", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("budget"), "stderr should mention the budget: {err}");
}
