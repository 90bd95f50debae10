use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn canring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canring")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("canring-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gens_json() {
    let o = canring(&["gens", "--alphas", "-1/2,1/3,1/5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let degs: Vec<u64> = v["generators"].as_array().unwrap().iter().map(|g| g["degree"].as_u64().unwrap()).collect();
    assert_eq!(degs, [6, 10, 15]);
}

#[test]
fn text_summary() {
    let o = canring(&["rels", "--alphas", "-1/2,1/3,1/5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).trim().is_empty());
}

#[test]
fn json_round_trip_is_byte_identical() {
    for cmd in ["rels", "groebner", "twopoint", "dims"] {
        let o = canring(&[cmd, "--alphas", "13/5,-1/4", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let text = stdout(&o);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end(), "{cmd}");
        assert!(!text.contains('.'), "{cmd}: floats in output");
    }
}

#[test]
fn divisor_file_matches_flags() {
    let path = scratch("d235.json");
    fs::write(&path, r#"{"points": ["inf", "0", "1"], "alphas": ["-1/2", "1/3", "1/5"], "char": 7}"#).unwrap();
    let from_file = canring(&["rels", "--divisor", path.to_str().unwrap(), "--json"]);
    let from_flags = canring(&["rels", "--alphas", "-1/2,1/3,1/5", "--points", "inf,0,1", "--char", "7", "--json"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_flags));

    let out = scratch("report.json");
    let o = canring(&["rels", "--divisor", path.to_str().unwrap(), "--json", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().trim_end(), stdout(&o).trim_end());
}

#[test]
fn input_errors_exit_one() {
    let cases: [&[&str]; 5] = [
        &["gens", "--alphas", "1/0"],
        &["gens", "--alphas", "1/2,1/3", "--points", "0,7", "--char", "7"],
        &["gens", "--alphas", "1/2,1/3", "--points", "0,0"],
        &["gens", "--bogus"],
        &["twopoint", "--alphas", "1/2,1/3,1/5"],
    ];
    for args in cases {
        assert_eq!(canring(args).status.code(), Some(1), "{args:?}");
    }
    let path = scratch("extra.json");
    fs::write(&path, r#"{"points": ["inf"], "alphas": ["1/2"], "char": 0, "colour": 1}"#).unwrap();
    assert_eq!(canring(&["gens", "--divisor", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn planted_chords_exit_two() {
    let args = [
        "scan", "--alphas", "-1/2,-1/2,1/3,1/3,1/5,1/5", "--points", "0,1,2,3,5,12/7", "--char", "0", "--configs", "2",
        "--seed", "1", "--json",
    ];
    let o = canring(&args);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stable"], serde_json::Value::Bool(false));
}

#[test]
fn stable_scan_is_reproducible() {
    let args = ["scan", "--alphas", "2,0,0", "--char", "0,2,3,5", "--configs", "3", "--seed", "7", "--json"];
    let a = canring(&args);
    let b = canring(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn oracle_matches() {
    let o = canring(&["oracle", "--alphas", "-1/2,1/3,1/5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("MATCH") && !text.contains("MISMATCH"));
}
