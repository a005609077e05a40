use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metacyclic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&run(&full))).expect("json output")
}

#[test]
fn validate_examples() {
    let o = run(&["validate", "mcp(2,2,1,2,2,-1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("valid\n"));
    assert_eq!(run(&["validate", "mc(3,2,0,2)"]).status.code(), Some(0));
    let o = run(&["validate", "mc(4,2,1,2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("gcd(r, m) = 1: fail"));
    let v = json(&["validate", "mcp(3,2,1,0,1,1)"]);
    assert_eq!(v["valid"], false);
    assert_eq!(v["clauses"]["b"], false);
}

#[test]
fn parse_errors_report_position() {
    let o = run(&["validate", "mc(4,2,x,2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 7"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["counts", "mc(256,1,0,1)"]).status.code(), Some(2));
    assert_eq!(
        run(&["--cap", "4096", "counts", "mc(2,1,0,1)"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["sweep", "--bound", "16", "--primes", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn counts_of_quaternion_type() {
    let o = run(&["counts", "mcp(2,2,1,1,2,-1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classes=5, cyclic-subgroup-classes=5, components=5"));
    let v = json(&["counts", "mcp(3,1,1,1,1,1)"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cyclic_subgroup_classes"], 5);
    assert_eq!(v["formula"]["value"], 5);
}

#[test]
fn iso_verdicts() {
    let o = run(&["iso", "mcp(2,2,1,1,2,-1)", "mcp(2,2,1,2,2,-1)"]);
    assert_eq!(stdout(&o), "non-isomorphic: division_flag differs\n");
    let o = run(&["iso", "mc(3,2,0,2)", "mc(6,1,0,1)"]);
    assert_eq!(stdout(&o), "non-isomorphic: abelianization differs\n");
    let v = json(&["iso", "mc(4,2,2,3)", "mcp(2,2,1,1,2,-1)"]);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["vectors"]["verdict"], "identical");
}

#[test]
fn pi_of_symmetric_three() {
    let v = json(&["pi", "mc(3,2,0,2)"]);
    assert_eq!(v["signature"]["pi"], serde_json::json!([2]));
    assert_eq!(v["signature"]["pi_prime"], serde_json::json!([3]));
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let path_s = path.to_str().unwrap();
    let first = run(&["--json", "wedderburn", "mc(8,2,0,7)"]);
    let second = run(&["--json", "--out", path_s, "wedderburn", "mc(8,2,0,7)"]);
    assert_eq!(second.status.code(), Some(0));
    assert!(second.stdout.is_empty());
    assert_eq!(first.stdout, std::fs::read(&path).unwrap());
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_small_orders() {
    let o = run(&["classify", "--bound", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 4 4 pass"));
}

#[test]
fn sweep_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("progress.txt");
    let cp_s = cp.to_str().unwrap();
    let args = [
        "--json",
        "sweep",
        "--bound",
        "8",
        "--primes",
        "2,3",
        "--checkpoint",
        cp_s,
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let lines = std::fs::read_to_string(&cp).unwrap();
    assert!(lines.lines().all(|l| l.split('\t').count() == 3));
    let v: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["all_passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["resumed"], c["passed"], "{c}");
    }
}

/// At bound 64 the real/imaginary center criterion fails for the order-16
/// generalized quaternion and semidihedral tuples with `ν = 1`; every other
/// check passes.
#[test]
fn sweep_to_sixty_four() {
    let o = run(&["--json", "sweep", "--bound", "64", "--primes", "2,3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["failed"] != 0)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["invariants.center_criteria"]);
    let center = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "invariants.center_criteria")
        .unwrap();
    assert_eq!(center["failed"], 6);
    assert_eq!(
        center["first_failures"][1]["item"],
        "mcp(2,3,1,2,3,-1) real/imaginary"
    );
}
