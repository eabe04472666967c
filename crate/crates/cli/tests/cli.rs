use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use topfan_core::fixtures;
use topfan_core::io::{fan_to_json, parse_fan};
use topfan_core::rational::{rat, ratio};
use topfan_core::ring::RElem;
use topfan_core::TopologicalFan;

fn topfan(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_topfan")).args(args).output().expect("spawn topfan");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixtures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cp.json");
    let (code, _, _) = topfan(&["fixtures", "cp2cp2", "-o", s(&p)]);
    assert_eq!(code, 0);
    let f = parse_fan(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(f, fixtures::cp2cp2());
}

#[test]
fn surgery_output_validates() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "cp.json", &fan_to_json(&fixtures::cp2cp2()));
    for op in [&["--stellar", "1,2"][..], &["--suspend"], &["--product", s(&p)]] {
        let out = dir.path().join("out.json");
        let mut args = vec!["surgery", s(&p)];
        args.extend_from_slice(op);
        args.extend(["-o", s(&out)]);
        let (code, json, err) = topfan(&args);
        assert_eq!(code, 0, "{op:?}: {err}");
        assert_eq!(json["result"]["valid"], Value::Bool(true));
        let (code, _, _) = topfan(&["validate", s(&out)]);
        assert_eq!(code, 0, "{op:?}");
    }
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", "{");
    let (code, _, err) = topfan(&["validate", s(&p)]);
    assert_eq!(code, 2);
    assert!(err.contains("malformed JSON"), "{err}");
    let (code, _, _) = topfan(&["validate", "/nonexistent/fan.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = topfan(&["realize", s(&p), "--mode", "nonsense", "--bound", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn duplicated_ray_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = fixtures::cp2cp2();
    f.rays[3] = f.rays[2].clone();
    let p = write(dir.path(), "dup.json", &fan_to_json(&f));
    let (code, json, _) = topfan(&["validate", s(&p)]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["valid"], Value::Bool(false));
    let kinds: Vec<&str> = json["result"]["witnesses"].as_array().unwrap().iter().filter_map(|w| w["kind"].as_str()).collect();
    assert!(kinds.contains(&"dependent_v") && kinds.contains(&"dependent_b"), "{kinds:?}");
}

#[test]
fn h_equivalence_of_rescaled_relabeled_fan() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixtures::cp2cp2();
    let mus = [
        RElem::new(rat(2), ratio(1, 3), 1),
        RElem::new(ratio(1, 2), rat(-1), -1),
        RElem::new(rat(5), rat(0), 1),
        RElem::new(rat(1), rat(4), -1),
    ];
    let g: TopologicalFan = f.right_multiply(&mus).relabel(&[3, 4, 1, 2]);
    let a = write(dir.path(), "a.json", &fan_to_json(&f));
    let b = write(dir.path(), "b.json", &fan_to_json(&g));
    let (code, json, _) = topfan(&["equiv", s(&a), s(&b), "--mode", "h"]);
    assert_eq!(code, 0);
    assert_eq!(json["result"]["equivalent"], Value::Bool(true));
    let (code, json, _) = topfan(&["equiv", s(&a), s(&b), "--mode", "strict"]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["equivalent"], Value::Bool(false));
}

#[test]
fn barnette_toric_sign_unsat_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("b.json");
    assert_eq!(topfan(&["fixtures", "barnette", "-o", s(&p)]).0, 0);
    let (code, json, _) = topfan(&["realize", s(&p), "--mode", "toric-sign", "--bound", "5", "--normalize", "1,2,3,4"]);
    assert_eq!(code, 1);
    assert_eq!(json["result"]["verdict"], "unsat");
    assert_eq!(json["result"]["case_analysis"]["infeasible"], Value::Bool(true));
}

#[test]
fn octahedron_four_color_realization() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("o.json");
    let out = dir.path().join("fan.json");
    assert_eq!(topfan(&["fixtures", "octahedron", "-o", s(&p)]).0, 0);
    let (code, _, err) = topfan(&["realize", s(&p), "--mode", "four-color", "--bound", "1", "-o", s(&out)]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(topfan(&["validate", s(&out)]).0, 0);
}

#[test]
fn seed_and_inputs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "cp.json", &fan_to_json(&fixtures::cp2cp2()));
    let (code, json, _) = topfan(&["--seed", "42", "--timings", "invariants", s(&p), "--todd"]);
    assert_eq!(code, 0);
    assert_eq!(json["report"]["seed"], 42);
    assert_eq!(json["report"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(json["report"]["timings_ms"]["total"].is_number());
    assert_eq!(json["result"]["todd"]["value"], 1);
    let (_, again, _) = topfan(&["--seed", "42", "invariants", s(&p), "--todd"]);
    assert_eq!(again["result"]["todd"], json["result"]["todd"]);
}

#[test]
fn charts_cocycle_and_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "cp.json", &fan_to_json(&fixtures::cp2cp2()));
    let (code, json, _) = topfan(&["charts", s(&p), "--cocycle", "--kernel", "1,2"]);
    assert_eq!(code, 0);
    assert!(!json["result"].is_null());
    let (code, _, _) = topfan(&["charts", s(&p), "--kernel", "1,3"]);
    assert_eq!(code, 2);
}
