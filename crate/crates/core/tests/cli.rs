mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gonality::samples::line_cover;
use gonality::{AdmissibleCover, CurveGraph, Mode};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gonality")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_json(dir: &Path, name: &str, value: &impl serde::Serialize) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bounds_irreducible() {
    let o = run(&["bounds", "--irreducible", "--ktilde", "2", "--delta", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "[2,5]");
    let o = run(&["bounds", "--components", "2,2", "--delta", "3"]);
    assert_eq!(stdout(&o).trim(), "[1,6]");
}

#[test]
fn bounds_precondition_exits_3() {
    let o = run(&["bounds", "--components", "2", "--delta", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("external node"), "{}", stderr(&o));
}

#[test]
fn figure_three() {
    let o = run(&["figures", "--id", "3"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!(line.starts_with("figure 3: degree 6,"), "{line}");
    assert!(line.trim_end().ends_with("valid"));
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_json(dir.path(), "good.json", &line_cover(1, 2, &vec![vec![2]; 4]));
    assert!(run(&["validate", &good]).status.success());

    let broken = write_json(dir.path(), "broken.json", &line_cover(1, 2, &vec![vec![2]; 3]));
    let o = run(&["validate", &broken]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("parity"), "{}", stdout(&o));
    assert!(run(&["validate", "--relaxed", "--cover", &broken]).status.code() == Some(3));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"source\": [").unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn construct_writes_valid_cover() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = run(&["construct", "--sample", "distinct", "--genus", "1", "--degree", "3", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let cover = AdmissibleCover::from_json(&fs::read_to_string(out.join("cover.json")).unwrap()).unwrap();
    assert!(cover.is_valid(Mode::Strict));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["degree"], 4);
    assert_eq!(report["branch_delta"], 4);
    assert!(run(&["validate", out.join("cover.json").to_str().unwrap()]).status.success());
}

#[test]
fn construct_is_deterministic() {
    let args = ["construct", "--sample", "equal", "--genus", "2", "--degree", "3", "--seed", "11"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let cover = AdmissibleCover::from_json(&stdout(&a)).unwrap();
    assert_eq!(cover.genus_of_source().unwrap(), 3);
}

#[test]
fn stratum_of_a_figure() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["figures", "--id", "2", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(dir.path().join("figure2.dot").exists());
    let o = run(&["stratum", "--cover", dir.path().join("figure2.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["n"], 1);
}

#[test]
fn search_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write_json(dir.path(), "theta.json", &common::theta());
    let o = run(&["--threads", "2", "search", "--curve", &theta, "--kmax", "3", "--budget", "R=4,T=4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["outcome"]["status"], "found");
    assert_eq!(report["outcome"]["k"], 2);

    let o = run(&["export-dot", "--curve", &theta]);
    assert!(stdout(&o).starts_with("graph curve {"));
    assert_eq!(stdout(&o).matches(" -- ").count(), 3);

    let o = run(&["search", "--curve", &theta, "--budget", "Q=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oversized_search_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let mut chain = CurveGraph::new();
    for i in 0..5 {
        chain.add_vertex(format!("v{i}"), 1);
        if i > 0 {
            chain.add_edge(format!("e{i}"), format!("v{}", i - 1), format!("v{i}"));
        }
    }
    let path = write_json(dir.path(), "chain.json", &chain);
    let o = run(&["search", "--curve", &path, "--kmax", "2"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}
