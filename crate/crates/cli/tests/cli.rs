use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = "x^4 - x^3 - x^2 + x - 1";
const LEHMER: &str = "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1";

fn garsia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garsia"))
        .args(args)
        .env_remove("GARSIA_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| garsia(args).status.code();
    assert_eq!(code(&["analyze", "x^2 - x - 1", "--n", "4"]), Some(0));
    assert_eq!(code(&["analyze", "x^4 - 1"]), Some(2), "reducible");
    assert_eq!(code(&["analyze", "x^2 - x - 1", "--p", "3/2"]), Some(2));
    assert_eq!(code(&["analyze", "x^2 - x - 1", "--precision", "2"]), Some(2));
    assert_eq!(code(&["analyze", "not a polynomial"]), Some(2));
    assert_eq!(code(&["analyze", "x^5 - x^3 + x^2 - x - 1", "--max-vertices", "100"]), Some(4));
    assert_eq!(code(&["frobnicate"]), Some(2));
}

#[test]
fn example_report() {
    let r = json(&garsia(&["analyze", EXAMPLE, "--json"]));
    assert_eq!(r["graph_sizes"], serde_json::json!([67, 21]));
    assert_eq!(r["classification"], "OTHER");
    assert_eq!(r["conclusion"], "dim = 1 certified");
    assert!((r["Hn_ratio"].as_f64().unwrap() - 1.5763).abs() < 1e-3);
    assert!((r["Lnprime_ratio"].as_f64().unwrap() - 0.77199).abs() < 1e-3);

    let text = stdout(&garsia(&["analyze", EXAMPLE]));
    assert_eq!(text.lines().last().unwrap(), "conclusion: dim = 1 certified");
}

#[test]
fn golden_ratio_is_pisot() {
    let o = garsia(&["analyze", "--poly", "x^2 - x - 1"]);
    assert!(stdout(&o).ends_with("conclusion: Pisot: dim < 1, lower bound = 0.99240\n"));
}

#[test]
fn json_output_is_deterministic() {
    let a = garsia(&["analyze", EXAMPLE, "--json"]);
    let b = garsia(&["analyze", EXAMPLE, "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exported_graph_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    let f = file.to_str().unwrap();
    let o = garsia(&["export", "--poly", EXAMPLE, "-o", f]);
    assert_eq!(o.status.code(), Some(0));
    let direct = json(&garsia(&["analyze", EXAMPLE, "--json"]));
    let loaded = json(&garsia(&["analyze", EXAMPLE, "--json", "--graph", f]));
    assert_eq!(direct, loaded);

    // A graph for another polynomial is refused.
    assert_eq!(garsia(&["analyze", "x^2 - x - 1", "--graph", f]).status.code(), Some(2));
    std::fs::write(&file, "{\"min_poly\": [1]}").unwrap();
    assert_eq!(garsia(&["analyze", EXAMPLE, "--graph", f]).status.code(), Some(2));
}

#[test]
fn cache_hits_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = garsia(&["analyze", EXAMPLE, "--json", "--cache", d]);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let warm = garsia(&["analyze", EXAMPLE, "--json", "--cache", d]);
    assert_eq!(cold.stdout, warm.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_garsia"))
        .args(["analyze", EXAMPLE, "--json"])
        .env("GARSIA_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(env.stdout, cold.stdout);
}

#[test]
fn dot_export() {
    let o = garsia(&["export", "--poly", "x^2 - x - 1", "--format", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=\"[").count(), 5);
}

#[test]
fn sweeps() {
    let rows = |d: &str| json(&garsia(&["sweep", "--degree", d, "--json"])).as_array().unwrap().clone();
    let two = rows("2");
    assert_eq!(two.len(), 1);
    assert_eq!(two[0]["pruned_size"], 5);
    let three = rows("3");
    let names: Vec<&str> = three.iter().map(|r| r["polynomial"].as_str().unwrap()).collect();
    assert_eq!(names, ["x^3 - x^2 - x - 1", "x^3 - x^2 - 1", "x^3 - x - 1"]);
    assert_eq!(rows("4").len(), 7);

    let table = stdout(&garsia(&["sweep", "--degree", "3"]));
    assert!(table.contains("0.96422") && table.contains("179"));
    let tight = stdout(&garsia(&["sweep", "--degree", "3", "--budget-vertices", "20"]));
    assert!(tight.lines().any(|l| l.ends_with('?')));
}

#[test]
fn salem_warning_on_stderr() {
    let o = garsia(&["analyze", LEHMER, "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.contains("Salem"), "{err}");
    assert!(!stdout(&o).contains("dim = 1 certified"));
}
