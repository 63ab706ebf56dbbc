use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

fn write_problem(dir: &TempDir, name: &str, problem: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, problem.to_string()).unwrap();
    path
}

fn run(problem: &Path, out: &Path, flags: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_maxcirc"))
        .arg(problem)
        .arg("--output")
        .arg(out)
        .args(flags)
        .status()
        .unwrap()
        .code()
        .unwrap()
}

fn run_report(problem: &Value, flags: &[&str]) -> (i32, Value) {
    let dir = TempDir::new().unwrap();
    let path = write_problem(&dir, "problem.json", problem);
    let out = dir.path().join("report.json");
    let code = run(&path, &out, flags);
    let report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (code, report)
}

fn point(v: &str) -> Value {
    json!({ "lower": v, "upper": v })
}

#[test]
fn circulant_analysis_report() {
    let problem = json!({
        "kind": "circulant_analysis",
        "circulant": ["0", 0, "1", "1/2"],
        "vectors": [["1/2", "1", "1/4", "1"]],
    });
    let (code, report) = run_report(&problem, &[]);
    assert_eq!(code, 0);
    let r = &report["results"];
    assert_eq!(r["lambda"], "1");
    assert_eq!(r["critical"]["components"], json!([[1, 3], [2, 4]]));
    assert_eq!(r["period"], 2);
    assert_eq!(r["transient"], 3);
    assert_eq!(r["vectors"][0]["member"], true);
    assert_eq!(r["vectors"][0]["eigenvector"], false);
    assert_eq!(report["kind"], "circulant_analysis");
    assert_eq!(report["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["input"]["circulant"], json!(["0", "0", "1", "1/2"]));
}

#[test]
fn modes_agree_on_membership() {
    let problem = json!({
        "kind": "attraction_check",
        "circulant": ["0", "1", "0", "1", "0", "0"],
        "vectors": [["1", "1", "0", "0", "0", "0"], ["1", "0", "1", "0", "1", "0"], ["2", "1", "2", "1", "2", "2"]],
    });
    let (_, min) = run_report(&problem, &["--mode", "min_transient"]);
    let (_, n2) = run_report(&problem, &["--mode", "exact-n2"]);
    let members = |r: &Value| -> Vec<Value> {
        r["results"]["vectors"].as_array().unwrap().iter().map(|v| v["member"].clone()).collect()
    };
    assert_eq!(members(&min), vec![json!(true), json!(false), json!(true)]);
    assert_eq!(members(&min), members(&n2));
    assert_eq!(n2["results"]["exponent"], 36);
}

#[test]
fn degenerate_instances_classify_uniformly() {
    let (circ, bx) = (["0", "0", "1", "1/2"].map(point), ["1/2", "1", "1/4", "1"].map(point));
    let yes = json!({ "kind": "robustness_classify", "circulant": circ, "box": bx });
    let (code, report) = run_report(&yes, &[]);
    assert_eq!(code, 0);
    for (name, status) in report["results"]["statuses"].as_object().unwrap() {
        assert_eq!(status["status"], "yes", "{name}");
    }
    let (circ, bx) = (["0", "1", "0", "0", "0", "0"].map(point), ["1", "2", "1", "1", "1", "1"].map(point));
    let no = json!({ "kind": "robustness_classify", "circulant": circ, "box": bx });
    let (code, report) = run_report(&no, &[]);
    assert_eq!(code, 0);
    for (name, status) in report["results"]["statuses"].as_object().unwrap() {
        assert_eq!(status["status"], "no", "{name}");
    }
}

#[test]
fn unmet_hypotheses_exit_with_three() {
    let circ = [point("0"), point("0"), point("1"), json!({ "lower": "1/4", "upper": "1/2", "brackets": "()" })];
    let bx = vec![json!({ "lower": "0", "upper": "1" }); 4];
    let problem = json!({ "kind": "robustness_classify", "circulant": circ, "box": bx });
    let (code, report) = run_report(&problem, &[]);
    assert_eq!(code, 3);
    assert_eq!(report["results"]["hat_in_interval"], false);
    assert_eq!(report["results"]["statuses"]["possibly_X"]["status"], "hypothesis_not_met");
    assert!(report["results"]["statuses"]["possibly_X"]["reason"].is_string());
}

#[test]
fn inclusion_check_reports_sampling() {
    let problem = json!({ "kind": "inclusion_check", "a": ["0", "0", "1", "1/4"], "b": ["0", "0", "1", "1/2"] });
    let (code, report) = run_report(&problem, &["--trials", "30", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["sampling"], json!({ "result": "consistent", "samples": 30 }));
    assert_eq!(report["results"]["critical_edges_included"], true);

    let swapped = json!({ "kind": "inclusion_check", "a": ["0", "0", "1", "1/2"], "b": ["0", "0", "1", "1/4"] });
    let (code, report) = run_report(&swapped, &[]);
    assert_eq!(code, 3);
    assert_eq!(report["results"]["a_le_b"], false);
}

#[test]
fn decimal_rendering_keeps_exact_values() {
    let problem = json!({ "kind": "circulant_analysis", "circulant": ["1/3", "0", "0"] });
    let (_, report) = run_report(&problem, &["--arithmetic", "decimal"]);
    assert_eq!(report["results"]["lambda"]["exact"], "1/3");
    assert!(report["results"]["lambda"]["decimal"].as_str().unwrap().starts_with("0.333333"));
}

#[test]
fn invalid_input_exits_with_two_and_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let cases = [
        ("syntax.json", "{ not json".to_string()),
        ("kind.json", json!({ "kind": "eigenvalues", "circulant": ["1"] }).to_string()),
        ("negative.json", json!({ "kind": "circulant_analysis", "circulant": ["-1", "2"] }).to_string()),
        ("dims.json", json!({ "kind": "inclusion_check", "a": ["1", "0"], "b": ["1"] }).to_string()),
        ("interval.json", json!({ "kind": "robustness_classify", "circulant": [{ "lower": "2", "upper": "1" }], "box": [point("1")] }).to_string()),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        assert_eq!(run(&path, &out, &[]), 2, "{name}");
        assert!(!out.exists(), "{name} produced a report");
    }
    assert_eq!(run(&dir.path().join("missing.json"), &out, &[]), 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let problem = json!({ "kind": "inclusion_check", "a": ["0", "1/2", "1", "0", "1/3"], "b": ["1/2", "1/2", "1", "1", "1/3"] });
    let path = write_problem(&dir, "p.json", &problem);
    let (o1, o2) = (dir.path().join("1.json"), dir.path().join("2.json"));
    run(&path, &o1, &["--seed", "3"]);
    run(&path, &o2, &["--seed", "3"]);
    assert_eq!(std::fs::read(&o1).unwrap(), std::fs::read(&o2).unwrap());
}
