use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn cyclrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclrc")).args(args).output().expect("binary runs")
}

fn cyclrc_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cyclrc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const EXAMPLE_45: &str = r#"{"n": 45, "q": {"p": 2, "m": 1}, "zeros": [0, 3, 5, 9], "label": "ex45"}"#;

#[test]
fn analyze_from_stdin() {
    let v = json(&cyclrc_stdin(&["analyze", "--spec", "-"], EXAMPLE_45));
    assert_eq!(v["k"], 30);
    assert_eq!(v["dual_representatives"], serde_json::json!([1, 3, 7, 15]));
    assert_eq!(v["oracle"]["d_dual"], 9);
    assert_eq!(v["oracle"]["r_exact"], 8);
    assert_eq!(v["spec"]["label"], "ex45");
}

#[test]
fn analyze_is_deterministic_across_threads() {
    let a = cyclrc_stdin(&["--threads", "1", "analyze", "--spec", "-"], EXAMPLE_45);
    let b = cyclrc_stdin(&["--threads", "3", "analyze", "--spec", "-"], EXAMPLE_45);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn symmetric_difference_spec() {
    let spec = r#"{"n": 45, "q": {"p": 2, "m": 1}, "zeros": [3, 5, 9, 21]}"#;
    let v = json(&cyclrc_stdin(&["analyze", "--spec", "-"], spec));
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["source"], "symmetric-difference");
    assert_eq!(certs[0]["bound_r"], 5);
    assert_eq!(v["oracle"]["d_dual"], 6);
}

#[test]
fn certificates_only_for_long_code() {
    let spec = r#"{"n": 105, "q": {"p": 2, "m": 1}, "zeros": [0, 3, 5, 7, 9, 25, 49]}"#;
    let v = json(&cyclrc_stdin(&["analyze", "--spec", "-", "--certificates-only"], spec));
    assert_eq!(v["best_locality_bound"], 12);
    assert!(v["oracle"].is_null());
    let out = cyclrc_stdin(&["analyze", "--spec", "-"], spec);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cyclrc(&["analyze"]).status.code(), Some(1));
    assert_eq!(cyclrc(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cyclrc_stdin(&["analyze", "--spec", "-"], "{\"n\": 45}").status.code(), Some(1));
    assert_eq!(cyclrc(&["bound", "--n", "10", "--d", "3", "--r", "2", "--q", "6"]).status.code(), Some(1));
    assert_eq!(cyclrc(&["--help"]).status.code(), Some(0));
}

#[test]
fn spec_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("cyclrc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.json");
    let p = path.to_str().unwrap();
    let v = json(&cyclrc(&["construct", "theorem1", "--n", "15", "--k", "4", "--r", "2", "--q", "16", "--l", "0", "--save", p]));
    assert_eq!(v["k"], 4);
    assert_eq!(v["optimal_distance"], 11);
    assert_eq!(v["oracle"]["d_min"], 11);
    let saved = std::fs::read_to_string(&path).unwrap();
    let a = json(&cyclrc(&["analyze", p]));
    assert_eq!(a["k"], 4);
    assert!(saved.ends_with("}\n"));
    assert_eq!(a["spec"], serde_json::from_str::<Value>(&saved).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rs_lrc_construction() {
    let v = json(&cyclrc(&["construct", "rs-lrc", "--n", "12", "--k", "6", "--r", "3", "--q", "13"]));
    assert_eq!(v["cyclic"], true);
    assert_eq!(v["optimal_distance"], 6);
    assert_eq!(v["d_min"], 6);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
}

#[test]
fn bounds_csv() {
    let out = cyclrc(&["bound", "--n", "45", "--d", "4", "--r", "8", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("shortening,45,4,8,2,36,"));
    assert!(text.contains("lp,45,4,8,2,38,38.47"));
}

#[test]
fn search_finds_small_locality_code() {
    let v = json(&cyclrc(&["search", "--n", "21", "--max-r", "5", "--exact", "100000"]));
    let hits = v.as_array().unwrap();
    assert!(hits.iter().any(|h| h["zeros"] == serde_json::json!([0, 1, 7]) && h["r"] == 5));
    let ks: Vec<u64> = hits.iter().map(|h| h["k"].as_u64().unwrap()).collect();
    assert!(ks.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn verify_paper_is_green() {
    let out = cyclrc(&["verify", "paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("EXPECTED-DIVERGENCE"));
    assert!(text.contains(" 0 failed"));
}
