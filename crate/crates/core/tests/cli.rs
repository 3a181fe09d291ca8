use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn resgraph(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_resgraph"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("RESGRAPH_MAX_VOLUME");
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = resgraph(&all, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    resgraph(args, None).status.code().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "fixture:a1"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["classify", "fixture:nope"]), 1);
    assert_eq!(code(&["classify", "/does/not/exist.json"]), 1);
    // a rational graph has no elliptic sequence
    assert_eq!(code(&["ellseq", "fixture:a1"]), 1);
    assert_eq!(code(&["enumerate", "--max-vertices", "12"]), 3);
    let capped = Command::new(env!("CARGO_BIN_EXE_resgraph"))
        .args(["strata", "fixture:g_left"])
        .env("RESGRAPH_MAX_VOLUME", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn app_strata_table() {
    let v = json(&["strata", "fixture:g_app", "--lprime", "zk"]);
    let levels = v["levels"].as_array().unwrap();
    let ks: Vec<u64> = levels.iter().map(|l| l["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, [2, 1, 0]);
    assert!(levels[0]["entries"].as_array().unwrap().is_empty());
    assert!(levels[1]["entries"].as_array().unwrap().is_empty());
    let bottom: Vec<(String, u64)> = levels[2]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["l"].to_string(), e["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(bottom, [("{}".to_string(), 2), (r#"{"a9":"1"}"#.to_string(), 1)]);
}

#[test]
fn noecc_violation_at_c8() {
    let v = json(&["criteria", "fixture:g_noecc"]);
    assert_eq!(v["wecc"], false);
    assert_eq!(v["monomial_condition"]["failing_nodes"], serde_json::json!(["c8"]));
    let ext = &v["extension_criterion"];
    assert_eq!(ext["verdict"], false);
    assert_eq!(ext["violations"][0]["vertex"], "c8");
}

#[test]
fn single_vertex_is_rational() {
    let v = json(&["classify", "fixture:a1"]);
    assert_eq!(v["classification"], "rational");
    assert_eq!(v["chi_zmin"], "1");
}

#[test]
fn text_and_json_agree() {
    let v = json(&["invariants", "fixture:g_new"]);
    let text = String::from_utf8(resgraph(&["invariants", "fixture:g_new"], None).stdout).unwrap();
    assert!(text.contains(&format!("det: {}", v["det"].as_str().unwrap())));
    for (id, x) in v["zk"].as_object().unwrap() {
        assert!(text.contains(&format!("{id}: {}", x.as_str().unwrap())), "{id}");
    }
}

#[test]
fn fixture_export_round_trips() {
    let exported = resgraph(&["fixture", "g_new"], None);
    let text = String::from_utf8(exported.stdout).unwrap();
    let from_file = resgraph(&["--format", "json", "invariants", "-"], Some(&text));
    assert_eq!(from_file.status.code(), Some(0));
    let a: Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b = json(&["invariants", "fixture:g_new"]);
    assert_eq!(a, b);
}

#[test]
fn minus_one_is_accepted_with_a_warning() {
    let file = r#"{"version": 1, "vertices": [{"id": "x", "euler": "−1"}, {"id": "y", "euler": -2}], "edges": [["x", "y"]]}"#;
    let out = resgraph(&["classify", "-"], Some(file));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not minimal"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("minimal: false"));
}

#[test]
fn malformed_graph_reports_position() {
    let out = resgraph(&["classify", "-"], Some("{\"version\": 1,\n \"vertices\": [}"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn oracle_agrees_on_app() {
    let v = json(&["oracle-verify", "fixture:g_app"]);
    assert_eq!(v["passed"], true);
}
