use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jacstrata"))
}

fn write(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn generated(family: &str, size: &str) -> PathBuf {
    let out = bin().args(["generate", family, size]).output().unwrap();
    assert!(out.status.success());
    write(&format!("{family}{size}.json"), std::str::from_utf8(&out.stdout).unwrap())
}

fn json(args: &[&str], file: &PathBuf) -> (Output, Value) {
    let out = bin().arg("--json").args(args).arg(file).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

#[test]
fn component_group_of_four_cycle() {
    let (out, v) = json(&["phi"], &generated("cycle", "4"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["results"]["order"], "4");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn two_cycle_has_one_totally_cyclic_class() {
    let (out, v) = json(&["orient", "--kind", "tc"], &generated("banana", "2"));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["results"]["count"], 1);
    let (_, v) = json(&["orient", "--kind", "rooted"], &generated("banana", "2"));
    assert_eq!(v["results"]["count"], 2);
}

#[test]
fn removed_edges_are_honoured() {
    let file = generated("banana", "3");
    let ids: Vec<String> = {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
        doc["edges"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap().to_string()).collect()
    };
    let (out, v) = json(&["orient", "--kind", "tc", "--removed", &ids[0]], &file);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["results"]["S"], serde_json::json!([ids[0]]));
    assert_eq!(v["results"]["count"], 1);
}

#[test]
fn verify_small_family_passes() {
    let out = bin().args(["verify", "--all", "--max-edges", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn unknown_suite_is_an_error() {
    let out = bin().args(["verify", "--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_reports_position() {
    let file = write("bad.json", "{\"vertices\": [\n  {\"id\": \"a\",}\n], \"edges\": []}");
    let out = bin().args(["info"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_edge_reference_is_rejected() {
    let file = write("dangling.json", r#"{"vertices": [{"id": "a"}], "edges": [{"id": "e", "ends": ["a", "z"]}]}"#);
    let out = bin().args(["phi"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let file = generated("complete", "4");
    for args in [&["strata", "--model", "picg"][..], &["poset", "--kind", "op1"], &["tropical"]] {
        let a = bin().arg("--json").args(args).arg(&file).output().unwrap();
        let b = bin().arg("--json").args(args).arg(&file).output().unwrap();
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn dot_output() {
    let out = bin()
        .args(["strata", "--model", "neron", "--format", "dot"])
        .arg(generated("cycle", "3"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"), "{text}");
    assert!(text.contains("->"));
}

#[test]
fn modspace_counts() {
    let out = bin().args(["--json", "modspace", "--genus", "2", "--legs", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["size"], 7);
}

#[test]
fn tropical_theta() {
    let theta = write(
        "theta.json",
        r#"{"vertices": [{"id": "a"}, {"id": "b"}],
            "edges": [{"id": "x", "ends": ["a", "b"]}, {"id": "y", "ends": ["a", "b"]}, {"id": "z", "ends": ["a", "b"]}],
            "lengths": {"x": 1, "y": 2.5, "z": 0.5}}"#,
    );
    let (out, v) = json(&["tropical"], &theta);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["results"]["f_vector"], serde_json::json!([3, 6, 3]));
    assert_eq!(v["results"]["euler_characteristic"], 0);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = bin()
        .args(["trees", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read_to_string(generated("complete", "4")).unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("16"));
}
