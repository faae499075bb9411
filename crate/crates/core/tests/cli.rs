use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

fn ihara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ihara"))
        .args(args)
        .env_remove("IHARA_ORACLE_WORK_CAP")
        .output()
        .expect("run ihara")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn k4_closed_geodesics_short_lengths_vanish() {
    let k4 = fixture("k4.json");
    let out = ihara(&["count", "--graph", k4.to_str().unwrap(), "--vertex", "0", "--max-length", "2", "--what", "closed-geodesics"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let text = v.to_string();
    assert!(text.contains("[0,0]") || text.contains("[\"0\",\"0\"]"), "{text}");
}

#[test]
fn cycle_series_from_counts() {
    let out = ihara(&["series", "--family", "cycle", "--params", "6", "--vertex", "0", "--order", "12", "--method", "counts", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().find(|l| l.starts_with("6,")).expect("row for u^6");
    assert!(row.contains("1/3"), "{row}");
}

#[test]
fn verify_passes_on_fixture() {
    let out = ihara(&["verify", "--order", "8", "--graph", fixture("petersen.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn corrupted_adjacency_fails_verify() {
    let out = ihara(&["verify", "--order", "8", "--corrupt-adjacency", "0,1", "--graph", fixture("k4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn work_cap_from_environment_refuses() {
    let out = Command::new(env!("CARGO_BIN_EXE_ihara"))
        .args(["count", "--family", "complete", "--params", "4", "--vertex", "0", "--max-length", "12"])
        .env("IHARA_ORACLE_WORK_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn bad_vertex_is_an_error() {
    let out = ihara(&["count", "--graph", fixture("k4.json").to_str().unwrap(), "--vertex", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn family_writes_graph_file() {
    let path = std::env::temp_dir().join(format!("ihara-family-{}.json", std::process::id()));
    let out = ihara(&["family", "--kind", "petersen", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["vertices"], 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
    std::fs::remove_file(path).ok();
}
