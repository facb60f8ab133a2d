use std::path::PathBuf;
use std::process::{Command, Output};

fn qchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qchar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn verify_hecke_over_a_range() {
    let out = qchar(&["verify", "hecke", "--n", "2..4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["summary"]["passed"], 3);
    let ns: Vec<u64> = report["checks"].as_array().unwrap().iter().map(|c| c["params"]["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, vec![2, 3, 4]);
}

#[test]
fn n_lists_and_caps() {
    let out = qchar(&["verify", "yang-baxter", "--n", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["passed"], 2);
    assert_eq!(qchar(&["verify", "hecke", "--n", "9"]).status.code(), Some(2));
    assert_eq!(qchar(&["dims", "--algebra", "re", "--n", "2", "--max-degree", "40"]).status.code(), Some(2));
    assert_eq!(qchar(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["dims", "--algebra", "symmetric", "--n", "2", "--max-degree", "3", "--seed", "7"];
    let (a, b) = (qchar(&args), qchar(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["config"]["seed"], 7);
    let dims: Vec<u64> = report["checks"].as_array().unwrap().iter().map(|c| c["params"]["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 4, 9, 16]);
}

#[test]
fn poisson_subcommand() {
    let out = qchar(&["poisson", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn check_matrix_exit_codes() {
    let good = scratch("good.json", r#"{"n": 2, "entries": [["a^2", "0"], ["0", "0"]]}"#);
    let bad = scratch("bad.json", r#"{"n": 2, "entries": [["1", "1"], ["1", "1"]]}"#);
    let out = qchar(&["check-matrix", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["failed"], 0);
    assert_eq!(qchar(&["check-matrix", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(qchar(&["check-matrix", "/nonexistent/matrix.json"]).status.code(), Some(2));
    let garbled = scratch("garbled.json", "{\"n\": 2, \"entries\": [[\"a +\"]]}");
    assert_eq!(qchar(&["check-matrix", garbled.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("qchar-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    assert_eq!(qchar(&["verify", "hecke", "--n", "2", "--out", p]).status.code(), Some(0));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["summary"]["passed"], 1);
}
