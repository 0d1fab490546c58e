use std::process::{Command, Output};

use serde_json::Value;

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere")).args(args).env_remove("QSPHERE_STEP_LIMIT").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = qsphere(&all);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

fn strip_elapsed(v: &mut Value) {
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed");
    }
}

#[test]
fn passing_suite_exits_zero() {
    let (code, v) = json(&["presentations"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 0);
}

#[test]
fn report_schema() {
    let (_, v) = json(&["bundle", "verify-projector"]);
    for key in ["version", "config", "checks", "summary"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["suites", "q0", "cutoff", "degree_bound", "step_limit", "parallelism"] {
        assert!(v["config"].get(key).is_some(), "missing config.{key}");
    }
    let c = &v["checks"][0];
    for key in ["id", "anchor", "status", "expected", "actual", "elapsed"] {
        assert!(c.get(key).is_some(), "missing check.{key}");
    }
    assert_eq!(c["status"], "pass");
    assert_eq!(v["config"]["q0"], "1/2");
}

#[test]
fn failing_check_exits_one() {
    // the printed trace-class bounds are exceeded by the partial sums
    let (code, v) = json(&["fock", "trace-class"]);
    assert_eq!(code, 1);
    assert!(v["summary"]["fail"].as_u64().unwrap() >= 1);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [&["--q", "0.5", "presentations"][..], &["--q", "3/2", "presentations"], &["--degree", "1", "presentations"]] {
        let out = qsphere(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(["presentations"])
        .env("QSPHERE_STEP_LIMIT", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn step_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(["--json", "nf", "sigma4q", "a b"])
        .env("QSPHERE_STEP_LIMIT", "20000")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["step_limit"], 20000);
}

#[test]
fn output_is_deterministic_up_to_timing() {
    let (_, mut a) = json(&["chern", "pairing"]);
    let (_, mut b) = json(&["chern", "pairing"]);
    strip_elapsed(&mut a);
    strip_elapsed(&mut b);
    assert_eq!(a, b);
    assert_eq!(a["checks"][0]["actual"], "-1");
}

#[test]
fn tiny_cutoff_makes_relations_vacuous() {
    let (_, v) = json(&["--cutoff", "1", "fock", "relations"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "vacuous"));
}

#[test]
fn normal_form_verb() {
    let out = qsphere(&["nf", "sigma4q", "b a"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("q^-3"), "{text}");
}
