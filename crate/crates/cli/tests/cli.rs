use std::process::Command;

use serde_json::Value;

use srax_cli::config::{Context, RunConfig};
use srax_cli::report::{Report, Row};
use srax_cli::run;

fn tokens(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

#[test]
fn typea_suite_has_twelve_passing_rows() {
    let cfg = RunConfig::from_tokens(&tokens("typea p=3 e=1 r=2 c=1")).unwrap();
    let report = run(&cfg, false).unwrap();
    assert!(report.rows.len() >= 12);
    assert!(report.rows.iter().all(|r| r.pass == Some(true)), "{}", report.text_summary());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn reports_are_deterministic() {
    let cfg = RunConfig::from_tokens(&tokens("all p=3 e=2 r=2 c=z points=1,z seed=7")).unwrap();
    let a = run(&cfg, false).unwrap().to_json();
    let b = run(&cfg, false).unwrap().to_json();
    assert_eq!(a, b);
    assert!(!a.contains("runtime_ms"));
}

#[test]
fn even_characteristic_is_rejected() {
    let cfg = RunConfig::from_tokens(&tokens("p=2 r=2 c=1")).unwrap();
    let err = run(&cfg, false).err().unwrap();
    assert_eq!(err.name(), "EvenCharacteristic");
    assert!(Context::build(&cfg).is_err());
}

#[test]
fn exit_codes() {
    let cfg = RunConfig::cyclic(3, 1, 2, Vec::new());
    let ok = Row::new("a", "x", Value::Null, Value::Bool(true), Value::Bool(true));
    let bad = Row::new("b", "x", Value::Null, Value::Bool(true), Value::Bool(false));
    let unknown = ok.clone().with_pass(None);
    assert_eq!(Report::new(cfg.clone(), vec![ok.clone()]).exit_code(), 0);
    assert_eq!(Report::new(cfg.clone(), vec![ok.clone(), unknown.clone()]).exit_code(), 2);
    assert_eq!(Report::new(cfg, vec![ok, unknown, bad]).exit_code(), 1);
}

#[test]
fn matrix_group_config() {
    let text = r#"{
        "field": {"p": 5},
        "group": {"type": "matrices", "generators": [[[0, 1], [1, 0]]]},
        "c": {"class_0": 3},
        "samples": 10
    }"#;
    let cfg = RunConfig::from_json(text).unwrap();
    let report = run(&cfg, false).unwrap();
    assert!(report.rows.len() >= 8);
    assert_eq!(report.exit_code(), 0, "{}", report.text_summary());
}

#[test]
fn unknown_parameter_is_a_parse_error() {
    let text = r#"{"field": {"p": 3}, "group": {"type": "cyclic", "r": 2}, "c": {"class_5": 1}}"#;
    let cfg = RunConfig::from_json(text).unwrap();
    assert_eq!(run(&cfg, false).err().unwrap().name(), "ConfigParse");
}

fn srax(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_srax")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn binary_dunkl_analyze() {
    let (code, out) = srax(&["dunkl", "--p", "3", "--e", "1", "--r", "2", "--c", "1", "--point", "a=1", "--analyze"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 6);
    assert_eq!(v["irreducible"], "Irreducible");
    assert_eq!(v["isotypic"], serde_json::json!([3, 3]));
    assert_eq!(v["azumaya_witness"]["full_matrix_algebra"], true);
    assert_eq!(v["azumaya_witness"]["spherical_dim"], 9);
}

#[test]
fn binary_run_and_errors() {
    let (code, out) = srax(&["run", "typea", "p=3", "e=1", "r=2", "c=1"]);
    assert_eq!(code, 0);
    assert!(out.contains("13 passed, 0 failed"));
    let (code, _) = srax(&["run", "p=2", "r=2", "c=1"]);
    assert_eq!(code, 1);
}

#[test]
fn binary_quotient_and_sweep() {
    let (code, out) = srax(&["quotient", "--p", "3", "--r", "2", "--c", "1", "--char", "x6=1,y6=1", "--analyze"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dim"], 72);
    let (code, out) = srax(&["typea", "--p", "3", "--r", "2", "sweep"]);
    assert_eq!(code, 0);
    let rows: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["smooth"] == false));
}
