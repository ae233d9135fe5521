use std::path::Path;
use std::process::{Command, Output};

fn rideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rideal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_witness(dir: &Path, family: &str, n: usize) -> String {
    let out = rideal(&["witness", family, &n.to_string(), "--json"]);
    assert!(out.status.success());
    let path = dir.join(format!("{}{n}.json", family.replace(':', "_")));
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn witness_json_is_r4() {
    let out = rideal(&["witness", "r:abcd", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["delta"]["a"], serde_json::json!([2, 3, 1, 4]));
    assert_eq!(v["delta"]["b"], serde_json::json!([1, 3, 2, 4]));
    assert_eq!(v["delta"]["c"], serde_json::json!([1, 2, 1, 4]));
    assert_eq!(v["delta"]["d"], serde_json::json!([1, 2, 4, 4]));
    assert_eq!(v["initial"], 1);
    assert_eq!(v["finals"], serde_json::json!([4]));
}

#[test]
fn witness_dot() {
    let out = rideal(&["witness", "r:ad", "3", "--dot"]);
    let s = stdout(&out);
    assert!(s.starts_with("digraph"));
    assert!(s.contains("doublecircle"));
}

#[test]
fn concat_of_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let r4 = write_witness(dir.path(), "r:abd", 4);
    let r5 = write_witness(dir.path(), "r:abd", 5);
    let out = rideal(&["op", "concat", &r4, &r5]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "complexity 12");
}

#[test]
fn file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let r5 = write_witness(dir.path(), "r:abcd", 5);
    assert_eq!(stdout(&rideal(&["complexity", &r5])).trim(), "complexity 5");
    assert_eq!(stdout(&rideal(&["semigroup", &r5])).trim(), "semigroup 625");
    assert!(stdout(&rideal(&["atoms", &r5])).starts_with("16 atoms"));
    let ad = write_witness(dir.path(), "r:ad", 5);
    assert_eq!(stdout(&rideal(&["op", "reverse", &ad])).trim(), "complexity 16");
    assert_eq!(stdout(&rideal(&["op", "star", &ad])).trim(), "complexity 6");
}

#[test]
fn exit_codes() {
    assert_eq!(rideal(&["witness", "nope", "4"]).status.code(), Some(2));
    assert_eq!(rideal(&["complexity", "/no/such/file.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2}").unwrap();
    assert_eq!(rideal(&["complexity", bad.to_str().unwrap()]).status.code(), Some(2));
    let r3 = write_witness(dir.path(), "r:abd", 3);
    assert_eq!(rideal(&["op", "union", &r3]).status.code(), Some(2));
    let out = rideal(&["semigroup", &r3, "--cap", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_small_grid() {
    let out = rideal(&["verify", "--n-min", "3", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let passes = stdout(&out).lines().filter(|l| l.starts_with("PASS")).count();
    assert!(passes >= 100, "{passes}");
}

#[test]
fn verify_resource_skip_exits_3() {
    let out = rideal(&["verify", "--n-max", "5", "--m-max", "4", "--semigroup-cap", "50"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("SKIPPED-RESOURCE"));
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--n-max", "6", "--json", "--seed", "7"];
    let a = rideal(&args);
    let b = rideal(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["claims"][0]["elapsed_ms"].is_null());
}

#[test]
fn verify_workers_flag() {
    let out = rideal(&["verify", "--n-max", "4", "--m-max", "4", "--workers", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_rideal"))
        .args(["verify", "--n-max", "4", "--m-max", "4"])
        .env("RIDEAL_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table1_markdown() {
    let out = rideal(&["table1", "--n-max", "4"]);
    let s = stdout(&out);
    assert!(s.contains("5/10"));
    assert!(s.contains("16/43"));
}
