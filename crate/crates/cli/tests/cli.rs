use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qsuper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsuper")).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qsuper-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn read_json(p: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn failing_rows(report: &Value) -> Vec<String> {
    let mut out = Vec::new();
    for s in report["suites"].as_array().unwrap() {
        for r in s["rows"].as_array().unwrap() {
            if r["status"] == "fail" {
                out.push(format!("{}/{}", r["table"].as_str().unwrap(), r["row_id"].as_str().unwrap()));
            }
        }
    }
    out
}

fn strip_elapsed(v: &mut Value) {
    for s in v["suites"].as_array_mut().unwrap() {
        s.as_object_mut().unwrap().remove("elapsed_ms");
    }
}

#[test]
fn gl11_structure_passes() {
    let out = tmp("gl11.json");
    let o = qsuper(&["run", "--mode", "gl", "--parity", "01", "--suites", "structure", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["datum"]["parity"], "01");
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["status"], "pass");
    let ybe = suites[0]["rows"].as_array().unwrap().iter().find(|r| r["row_id"] == "ybe").unwrap();
    assert_eq!(ybe["status"], "pass");
    assert!(String::from_utf8_lossy(&o.stdout).contains("structure"));
}

#[test]
fn osp12_all_fails_only_on_literal_rows() {
    let out = tmp("osp12.json");
    let o = qsuper(&["run", "--mode", "osp", "--parity", "101", "--suites", "all", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = read_json(&out);
    assert_eq!(v["suites"].as_array().unwrap().len(), 9);
    assert_eq!(
        failing_rows(&v),
        ["structure/supertranspose", "roundtrip/ω[e1]", "roundtrip/ω[f1]"]
    );
}

#[test]
fn odd_n_is_a_usage_error() {
    let o = qsuper(&["run", "--mode", "osp", "--parity", "10"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("must be even"), "{err}");
}

#[test]
fn bad_inputs_are_usage_errors() {
    for args in [
        &["run", "--mode", "gl", "--parity", "0x1"][..],
        &["run", "--mode", "gl", "--parity", "01", "--suites", "bogus"],
        &["run", "--mode", "gl", "--parity", "01", "--theta", "++"],
        &["run", "--mode", "osp", "--parity", "0110", "--theta", "+"],
        &["roots", "gram", "--mode", "gl", "--parity", "01", "--degree", "a,b"],
        &["present", "extract", "--mode", "gl", "--parity", "01", "--signs", "xy"],
        &["pairing", "eval", "--mode", "gl", "--parity", "01", "--left", "lm1_1", "--right", "lm1_1"],
        &["run", "--parity", "01"],
    ] {
        assert_eq!(qsuper(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (tmp("det-a.json"), tmp("det-b.json"));
    for p in [&a, &b] {
        let o = qsuper(&["run", "--mode", "gl", "--parity", "011", "--suites", "gram,twist,cross", "--parallel", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (mut x, mut y) = (read_json(&a), read_json(&b));
    strip_elapsed(&mut x);
    strip_elapsed(&mut y);
    assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
    // suites run in module order whatever order they are given in
    let names: Vec<&str> = x["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["twist", "cross", "gram"]);
}

#[test]
fn cache_roundtrip_keeps_results() {
    let cache = tmp("memo.json");
    let _ = std::fs::remove_file(&cache);
    let (a, b) = (tmp("cache-a.json"), tmp("cache-b.json"));
    for p in [&a, &b] {
        let o = qsuper(&[
            "run", "--mode", "osp", "--parity", "0110", "--suites", "convolution,gram", "--cache",
            cache.to_str().unwrap(), "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let memo = read_json(&cache);
    assert!(!memo["sigma_tilde"].as_array().unwrap().is_empty());
    assert_eq!(memo["key"]["datum"]["parity"], "0110");
    let (mut x, mut y) = (read_json(&a), read_json(&b));
    strip_elapsed(&mut x);
    strip_elapsed(&mut y);
    assert_eq!(x, y);
}

#[test]
fn stdout_carries_json_without_out() {
    let o = qsuper(&["roots", "factorize", "--mode", "gl", "--parity", "01"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suites"][0]["name"], "factorize");
}

#[test]
fn gram_single_degree() {
    let o = qsuper(&["roots", "gram", "--mode", "gl", "--parity", "011", "--degree", "1,0,-1", "--height", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["suites"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["row_id"].as_str().unwrap().contains("[1, 0, -1]"));
}

#[test]
fn pairing_eval_prints_value() {
    let o = qsuper(&["pairing", "eval", "--mode", "gl", "--parity", "00", "--left", "lp1_1", "--right", "lm1_1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "1 / q");
    let o = qsuper(&["pairing", "eval", "--mode", "gl", "--parity", "00", "--spec", "dj", "--left", "f1", "--right", "e1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn extract_and_build_emit_json() {
    let o = qsuper(&["present", "extract", "--mode", "gl", "--parity", "01", "--signs=+-"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["signs"], "+-");
    assert!(!v["relations"].as_array().unwrap().is_empty());

    let o = qsuper(&["rmatrix", "build", "--mode", "osp", "--parity", "101"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["datum"]["type"], "B");
    assert!(v["R"].as_object().unwrap().len() > 3);
}

#[test]
fn subcommand_suites() {
    for (args, suites) in [
        (&["rmatrix", "check"][..], &["structure", "relations"][..]),
        (&["present", "twistcheck"], &["twist"]),
        (&["present", "crosscheck"], &["cross"]),
        (&["present", "tables"], &["tables"]),
        (&["roots", "correspondence"], &["correspondence"]),
    ] {
        let mut full = args.to_vec();
        full.extend(["--mode", "gl", "--parity", "011"]);
        let o = qsuper(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
        assert_eq!(names, suites);
    }
}
