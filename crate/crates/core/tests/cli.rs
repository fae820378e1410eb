use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chore-division")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const ALLOCATION_A: &str = r#"{"bundles":[[3,4,5],[6,7,8,9],[0,1,2]]}"#;
const ALLOCATION_B: &str = r#"{"bundles":[[0,1,4],[5,7,9],[2,3,6,8]]}"#;
const CORRUPTED_TABLE: &str =
    r#"{"version":1,"n":2,"m":2,"agents":[{"kind":"table","values":[0,1,1,1]},{"kind":"cardinality"}]}"#;

#[test]
fn lorenz_solution_for_first_incomparability_instance() {
    let out = run(&["solve", "builtin:incomparable-1", "--algo", "lorenz"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["social_cost"], 5);
    let mut profile: Vec<u64> = doc["cost_profile"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(profile, [2, 2, 1]);
}

#[test]
fn every_algorithm_is_deterministic() {
    for algo in ["scm", "ef1po", "mmspo", "lorenz"] {
        let first = run(&["solve", "builtin:incomparable-2", "--algo", algo]);
        let second = run(&["solve", "builtin:incomparable-2", "--algo", algo]);
        assert_eq!(first.status.code(), Some(0), "{algo}");
        assert_eq!(first.stdout, second.stdout, "{algo}");
    }
}

#[test]
fn scm_on_pair_instance_costs_one() {
    let out = run(&["solve", "builtin:no-po-efx(1)", "--algo", "scm"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["social_cost"], 1);
}

#[test]
fn efx_solver_rejects_distinct_costs() {
    let out = run(&["solve", "builtin:incomparable-2", "--algo", "efx-identical"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not identical"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn uncertified_costs_are_named_in_the_diagnostic() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "bad.json", CORRUPTED_TABLE);
    let out = run(&["solve", s(&inst), "--algo", "lorenz"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("costs not certified binary supermodular"), "{}", stderr(&out));
}

#[test]
fn check_reports_verdicts_through_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", ALLOCATION_A);
    let b = write(&dir, "b.json", ALLOCATION_B);
    let cases = [(&a, "ef1", 0), (&a, "mms", 1), (&b, "mms", 0), (&b, "ef1", 1)];
    for (alloc, property, code) in cases {
        let out = run(&["check", "builtin:incomparable-2", s(alloc), "--property", property]);
        assert_eq!(out.status.code(), Some(code), "{property}: {}", stdout(&out));
        let doc = json(&out);
        assert_eq!(doc["verdict"], code == 0);
        assert_eq!(doc.get("violation").is_some(), code == 1);
    }
}

#[test]
fn pareto_optimal_allocation_is_not_half_efx() {
    let dir = TempDir::new().unwrap();
    let po = write(&dir, "po.json", r#"{"bundles":[[0],[1,2]]}"#);
    let out = run(&["check", "builtin:no-po-efx(1)", s(&po), "--property", "po"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "check", "builtin:no-po-efx(1)", s(&po), "--property", "befkx", "--beta", "1/2", "--k", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["verdict"], false);
    assert!(doc["violation"]["kind"].is_string(), "{doc}");
}

#[test]
fn lorenz_comparison_against_another_allocation() {
    let dir = TempDir::new().unwrap();
    let lorenz = run(&["solve", "builtin:incomparable-1", "--algo", "lorenz"]);
    let scm = run(&["solve", "builtin:incomparable-1", "--algo", "scm"]);
    let lorenz = write(&dir, "lorenz.json", &stdout(&lorenz));
    let scm = write(&dir, "scm.json", &stdout(&scm));
    let vs_scm = format!("lorenz-vs:{}", s(&scm));
    let out = run(&["check", "builtin:incomparable-1", s(&lorenz), "--property", &vs_scm]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["comparison"], "dominates");
    let vs_lorenz = format!("lorenz-vs({})", s(&lorenz));
    let out = run(&["check", "builtin:incomparable-1", s(&scm), "--property", &vs_lorenz]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn shares_of_builtins_and_a_zero_cost_instance() {
    assert_eq!(stdout(&run(&["shares", "builtin:incomparable-1"])).trim(), "[4,1,1]");
    assert_eq!(stdout(&run(&["shares", "builtin:incomparable-2"])).trim(), "[4,4,2]");
    let dir = TempDir::new().unwrap();
    let zero = write(
        &dir,
        "zero.json",
        r#"{"version":1,"n":3,"m":4,"agents":[{"kind":"threshold","k":4},{"kind":"threshold","k":4},{"kind":"threshold","k":5}]}"#,
    );
    assert_eq!(stdout(&run(&["shares", s(&zero)])).trim(), "[0,0,0]");
}

#[test]
fn verify_passes_on_builtins_and_random_instances() {
    let out = run(&["verify", "builtin:incomparable-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
    let out = run(&["verify", "random:n=3,m=8", "--seed", "7", "--count", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("0 failed").count(), 4);
}

#[test]
fn verify_flags_a_corrupted_table() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "bad.json", CORRUPTED_TABLE);
    let out = run(&["verify", s(&inst)]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.lines().any(|l| l.starts_with("FAIL") && l.contains("certification agent 0")), "{report}");
}

#[test]
fn verify_respects_the_enumeration_bound() {
    let out = run(&["verify", "builtin:incomparable-1", "--bound", "1000"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}

#[test]
fn gen_writes_instances_that_load_again() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("gen.json");
    let out = run(&["gen", "random:n=2,m=6,identical", "--seed", "3", "--out", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let again = run(&["gen", "random:n=2,m=6,identical", "--seed", "3"]);
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&again));
    let out = run(&["solve", s(&path), "--algo", "efx-identical"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["solve", "builtin:incomparable-1", "--algo", "greedy"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "builtin:nothing", "--algo", "scm"]).status.code(), Some(2));
    assert_eq!(run(&["shares", "/nonexistent/instance.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", ALLOCATION_A);
    let out = run(&["check", "builtin:incomparable-2", s(&a), "--property", "befkx", "--beta", "3/2"]);
    assert_eq!(out.status.code(), Some(2));
}
