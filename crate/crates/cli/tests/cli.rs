use std::process::{Command, Output};

use serde_json::Value;

fn xlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xlag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ground_state_is_one_at_origin() {
    let out = xlag(&["eval", "--kind", "I", "--m", "1", "--alpha", "3", "--n", "0", "--x", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["value"].as_f64(), Some(1.0));
}

#[test]
fn every_document_has_the_stable_keys() {
    for args in [
        vec!["eval", "--n", "2", "--x", "0.5"],
        vec!["roots", "--m", "2", "--alpha", "3"],
        vec!["quad", "--order", "6"],
        vec!["ortho", "--n", "3"],
        vec!["vcert", "--alpha", "1", "--points", "20"],
    ] {
        let out = xlag(&args);
        let v = json(&out);
        for key in ["command", "params", "result", "diagnostics", "pass"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn positivity_example_passes() {
    let out = xlag(&["positivity", "--m", "1", "--alpha", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["result"]["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn failed_certificate_exits_with_one() {
    let out = xlag(&["positivity", "--m", "1", "--alpha", "0.1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], Value::Bool(false));
}

#[test]
fn nikolskii_q2_matches_closed_form() {
    let out = xlag(&["nikolskii", "--q", "2", "--n", "6", "--point", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let optimized = v["result"]["constant"].as_f64().unwrap();
    let closed = v["diagnostics"]["closed_form"].as_f64().unwrap();
    assert!((optimized - closed).abs() <= 1e-8 * closed);
}

#[test]
fn usage_errors_exit_with_two_and_a_reason() {
    let out = xlag(&["eval", "--n", "1", "--alpha", "-2", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["diagnostics"]["error"], "InvalidParams");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().filter(|l| l.starts_with("reason: ")).count(), 1);

    let out = xlag(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["diagnostics"]["error"], "Usage");

    let out = xlag(&["eval", "--n", "1", "--x", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["diagnostics"]["error"], "InvalidDomain");
}

#[test]
fn tables_come_out_as_csv() {
    let out = xlag(&["--format", "csv", "eval", "--n", "1", "--x-max", "1", "--step", "0.25"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,u");
    assert_eq!(lines.len(), 6);
    let first: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 1.0]);
}

#[test]
fn output_file_and_seeded_runs_are_reproducible() {
    let dir = std::env::temp_dir().join(format!("xlag-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let out = xlag(&["--out", p.to_str().unwrap(), "maxprinciple", "--n", "3", "--seed", "7"]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_runs_selected_criteria() {
    let out = xlag(&["report", "--only", "1,6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let ids: Vec<u64> = v["result"]["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![1, 6]);
    assert_eq!(xlag(&["report", "--only", "11"]).status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_with_three() {
    let out = xlag(&["supnorm", "--n", "3", "--x-max", "0.5", "--step", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["diagnostics"]["error"], "GridTooShort");
}
