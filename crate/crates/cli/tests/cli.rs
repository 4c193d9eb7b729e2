use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edge-ends")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn analyze_figure1() {
    let out = run(&["analyze", &data("figure1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "edge-ends/1");
    assert_eq!(v["strands"].as_array().unwrap().len(), 2);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0]["dominators"], serde_json::json!(["v_inf"]));
}

#[test]
fn menger_on_k4() {
    let out = run(&["menger", "--graph", &data("k4.json"), "--a", "a", "--b", "b"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["paths"].as_array().unwrap().len(), 3);
    assert_eq!(v["verified"], true);
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["analyze", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "io");
}

#[test]
fn malformed_file_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"core\": {\n  \"vertices\": [").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn usage_errors_are_json() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
    let out = run(&["--format", "dot", "analyze", &data("figure1.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn odd_cut_exits_1() {
    let out = run(&["pack", "--graph", &data("k4.json"), "--terminals", "a,b"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "parity_violation");
    assert_eq!(v["error"]["detail"]["cut_size"], 3);
}

#[test]
fn pack_all_of_k4() {
    let out = run(&["pack", "--graph", &data("k4.json"), "--terminals", "a,b,c,d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 6);
    assert!(v["cuts"].as_array().unwrap().iter().all(|c| c["lambda"] == 3));
}

#[test]
fn lc_ends_report_verifies() {
    let out = run(&["lc-ends", &data("figure1.json"), "--terminals", "v_0,class:0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 3);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lc.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = run(&["verify", &data("figure1.json"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn tampered_report_fails_verification() {
    let out = run(&["lc-ends", &data("figure1.json"), "--terminals", "v_0,class:0"]);
    let mut v = json(&out);
    let first = v["certificates"][0]["edges"].as_array_mut().unwrap();
    first.pop();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lc.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["verify", &data("figure1.json"), path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["ok"], false);
}

#[test]
fn inseparable_terminals_exit_1() {
    let out = run(&["lc-ends", &data("figure1.json"), "--terminals", "v_inf,class:0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "domain");
}

#[test]
fn dot_exports() {
    let out = run(&["--format", "dot", "truncate", &data("figure1.json"), "-n", "2"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    // 2 arms of 3 layers dominated by v_inf
    assert_eq!(dot.matches("style=dashed").count(), 6);
    let out = run(&["--format", "dot", "lc-ends", &data("figure1.json"), "--terminals", "v_0,class:0"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.contains("class:0"));
    assert_eq!(dot.matches("label=\"inf\"").count(), 1);
}

#[test]
fn oracle_is_reproducible() {
    let args = ["oracle", "packing-count", "--seed", "3", "--count", "15"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn oracle_menger_duality() {
    let out = run(&["oracle", "menger-duality", "--seed", "7", "--max-v", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["instances"].as_u64().unwrap() > 700);
}

#[test]
fn empty_oracle_warns() {
    let out = run(&["oracle", "ends-duality", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instances"], 0);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}
