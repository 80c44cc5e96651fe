use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dvrtrace"))
}

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_json_report() {
    let out = run(&["analyze", sample("eisenstein_z3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["trace"]["f"], 1);
    assert_eq!(v["verdict"]["slack"], 0);
    assert_eq!(v["verdict"]["cond1"], true);
    assert_eq!(v["fiber"]["geometric_point_count"], 1);
}

#[test]
fn analyze_text_and_infinite_f() {
    let out = run(&["analyze", sample("imperfect_x4_u.json").to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("f          inf"), "{text}");
    assert!(text.contains("h 4"), "{text}");
}

#[test]
fn analyze_replays_from_echo() {
    let out = run(&["analyze", sample("product_f4.json").to_str().unwrap()]);
    let first = json(&out);
    let mut child = bin().args(["analyze", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(first["input"].to_string().as_bytes()).unwrap();
    let second = json(&child.wait_with_output().unwrap());
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(first), strip(second));
}

#[test]
fn invalid_and_parse_errors_exit_2() {
    assert_eq!(run(&["analyze", sample("invalid_unit.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/definitely/not/here.json"]).status.code(), Some(2));
    let mut child = bin().args(["analyze", "-"]).stdin(Stdio::piped()).stdout(Stdio::null()).stderr(Stdio::null()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(b"{\"dvr\": 3}").unwrap();
    assert_eq!(child.wait().unwrap().code(), Some(2));
    assert_eq!(run(&["suite", "--backends", "zp:6"]).status.code(), Some(2));
}

#[test]
fn grid_example_matches() {
    let out = run(&["grid-example", "--p", "2", "--a-list", "0,1,3", "--b-list", "2,4,6,12", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["matches"] == true));
}

#[test]
fn suite_counts_and_strict() {
    let out = run(&["suite", "--seed", "9", "--count", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instances"], 20);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    // tables over F_2(u) hit the capability limit
    let args = ["suite", "--backends", "kut:2", "--degree-max", "3", "--mix", "0,0,2"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict).status.code(), Some(3));
}

#[test]
fn empty_suite_succeeds() {
    let out = run(&["suite", "--mix", "0,0,0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["instances"], 0);
}
