use std::path::PathBuf;
use std::process::{Command, Output};

fn gca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gca"))
        .args(args)
        .env_remove("GCA_MAX_GROUP_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gca-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn cocycle_pass() {
    let o = gca(&["verify-cocycle", "--cochain", "gca", "--n", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("∂F ≡ 1 over 729 triples"));
}

#[test]
fn octonion_cocycle_fails_with_witness() {
    let o = gca(&["verify-cocycle", "--cochain", "octonion", "--m", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("∂F ≢ 1: ∂F(("));
    let o = gca(&[
        "verify-cocycle",
        "--cochain",
        "octonion",
        "--m",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cocycle"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn weak_hopf_lines() {
    let o = gca(&["verify-weak-hopf", "--cochain", "gca", "--n", "2", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let axiom_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with("algebra")).collect();
    assert_eq!(axiom_lines.len(), 10);
    assert!(axiom_lines.iter().all(|l| l.ends_with(": pass")));
}

#[test]
fn weak_hopf_json_schema() {
    let o = gca(&[
        "verify-weak-hopf",
        "--cochain",
        "octonion",
        "--m",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["axioms"].as_object().unwrap().len(), 10);
    assert!(v["counterexamples"].as_object().unwrap().is_empty());
}

#[test]
fn quaternion_table() {
    let o = gca(&["table", "--n", "2", "--m", "2", "--q", "-1,-1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["products"].as_array().unwrap().len(), 16);
    let text = stdout(&gca(&["table", "--n", "2", "--m", "2", "--q", "-1,-1"]));
    assert!(
        text.contains("e1*e2 · e1*e2 = -1\n")
            || text.contains("e1*e2 · e1*e2 = -1·1\n")
            || text.contains("e1*e2 · e1*e2 = -1")
    );
}

#[test]
fn symbolic_cube_relation() {
    let text = stdout(&gca(&["table", "--n", "3", "--m", "1"]));
    assert!(text.contains("e1^2 · e1 = q1·1"));
}

#[test]
fn decompose_and_braiding() {
    let o = gca(&["decompose", "--n", "2", "--m", "2", "--split", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("split at 1: tables match"));
    assert_eq!(gca(&["decompose", "--n", "2", "--m", "1"]).status.code(), Some(2));
    assert_eq!(
        gca(&["decompose", "--n", "2", "--m", "3", "--split", "3"])
            .status
            .code(),
        Some(2)
    );
    let o = gca(&["braiding", "--n", "3", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("symmetric: pass"));
}

#[test]
fn usage_and_resource_errors() {
    assert_eq!(gca(&["table", "--n", "1"]).status.code(), Some(2));
    assert_eq!(
        gca(&["table", "--n", "2", "--m", "2", "--q", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(gca(&["table", "--q", "0"]).status.code(), Some(2));
    assert_eq!(gca(&["table", "--q", "bogus"]).status.code(), Some(2));
    assert_eq!(
        gca(&["verify-cocycle", "--cochain", "octonion", "--m", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(gca(&["nonsense"]).status.code(), Some(2));
    assert_eq!(gca(&["verify-cocycle", "--n", "9", "--m", "4"]).status.code(), Some(3));
    assert_eq!(
        gca(&["table", "--n", "3", "--m", "3", "--max-group-order", "10"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_gca"))
        .args(["table", "--n", "3", "--m", "3"])
        .env("GCA_MAX_GROUP_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn export_is_deterministic() {
    let a = scratch("a");
    let b = scratch("b");
    for dir in [&a, &b] {
        let o = gca(&["export", "--n", "3", "--m", "2", "--output", dir.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    for name in [
        "multiplication.json",
        "comultiplication.json",
        "antipode.json",
        "cochain.json",
        "axioms.json",
    ] {
        let x = std::fs::read(a.join(name)).unwrap();
        let y = std::fs::read(b.join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name}");
    }
    let axioms: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("axioms.json")).unwrap()).unwrap();
    assert!(axioms["axioms"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn trivial_and_file_cochains() {
    let dir = scratch("trivial");
    let path = dir.join("cochain.json");
    let o = gca(&[
        "export",
        "--cochain",
        "trivial",
        "--n",
        "3",
        "--m",
        "1",
        "--output",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    let o = gca(&["verify-cocycle", "--cochain", "file", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("over 27 triples"));

    let dir = scratch("oct");
    gca(&[
        "export",
        "--cochain",
        "octonion",
        "--m",
        "3",
        "--output",
        dir.to_str().unwrap(),
    ]);
    let o = gca(&[
        "verify-cocycle",
        "--cochain",
        "file",
        "--file",
        dir.join("cochain.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let missing = gca(&["verify-cocycle", "--cochain", "file", "--file", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn output_file_matches_json_stdout() {
    let dir = scratch("out");
    let path = dir.join("table.json");
    let o = gca(&[
        "table",
        "--n",
        "2",
        "--m",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}
