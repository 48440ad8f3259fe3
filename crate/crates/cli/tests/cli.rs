use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn cutspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutspec"))
        .args(args)
        .env_remove("CUTSPEC_FIXTURES")
        .output()
        .expect("run cutspec")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn cut_examples() {
    let v = stdout_json(&cutspec(&["cut", "embed(0) + embed(0)", "--rank", "1"]));
    assert_eq!(v, json!({"cut": "prefix", "p": [0]}));
    let v = stdout_json(&cutspec(&["cut", "prefix([3]) + principal([0,7])", "--rank", "2"]));
    assert_eq!(v, json!({"cut": "prefix", "p": [3]}));
    let v = stdout_json(&cutspec(&["cut", "Hplus(1)", "--rank", "2"]));
    assert_eq!(v, json!({"cut": "prefix", "p": [0]}));
    let v = stdout_json(&cutspec(&["cut", "2 * embed([1,-1]) − [0,3]", "--rank", "2"]));
    assert_eq!(v, json!({"cut": "prefix", "p": [2, -5]}));
    let v = stdout_json(&cutspec(&["cut", "infty + top"]));
    assert_eq!(v, json!({"cut": "infty"}));
}

#[test]
fn cut_parse_errors_point_at_the_column() {
    let out = cutspec(&["cut", "prefix([1]) + ", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("column 15"), "{err}");
    assert!(err.contains('^'), "{err}");
    let out = cutspec(&["cut", "embed(0)", "--rank", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qv_examples() {
    let diag = r#"{"e11": [[1, 1, [2, 0]]], "e22": [[1, 1, [3, 0]]]}"#;
    let v = stdout_json(&cutspec(&["qv", "--instance", "m2_ov", "--element", diag, "--which", "min-formula"]));
    assert_eq!(v["value"], json!({"cut": "prefix", "p": [2, 0]}));

    for name in ["m2_ov", "diag_f_ov", "r2_example", "torsion_trunc_px"] {
        let v = stdout_json(&cutspec(&["qv", "--instance", name, "--element", "{}", "--which", "filter"]));
        assert_eq!(v["value"], json!({"cut": "infty"}), "{name}");
    }

    let v = stdout_json(&cutspec(&["qv", "--instance", "diag_f_ov", "--element", r#"{"e11": [[1, 1, [0]]]}"#, "--which", "filter"]));
    assert_eq!(v["value"], json!({"cut": "top"}));

    // Both side by side.
    let v = stdout_json(&cutspec(&["qv", "--instance", "m2_ov", "--element", diag]));
    assert_eq!(v["filter"], json!({"cut": "prefix", "p": [2, 0]}));
    assert_eq!(v["min_formula"], json!({"cut": "prefix", "p": [2, 0]}));
}

#[test]
fn qv_rejects_non_members() {
    let out = cutspec(&["qv", "--instance", "m2_ov", "--element", r#"{"e12": [[1, 1, [-1, 0]]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not in the algebra"));
    let out = cutspec(&["qv", "--instance", "m2_ov", "--element", r#"{"e13": []}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("e13"));
}

#[test]
fn spec_examples() {
    let v = stdout_json(&cutspec(&["spec", "--instance", "m2_ov"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 3);
    assert_eq!(v["covers"], json!([[0, 1], [1, 2]]));
    assert_eq!(v["longest_chain"], 3);

    let v = stdout_json(&cutspec(&["spec", "--instance", "localization_subring"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
    assert_eq!(v["unhit"], json!(["Iv"]));

    let v = stdout_json(&cutspec(&["spec", "--rank", "3"]));
    let primes: Vec<&Value> = v["base"].as_array().unwrap().iter().map(|b| &b["prime"]).collect();
    assert_eq!(primes, [&json!("zero"), &json!("P2"), &json!("P1"), &json!("Iv")]);

    // Rank override on a fixture written with shorthands.
    let v = stdout_json(&cutspec(&["spec", "--instance", "m2_ov", "--rank", "3"]));
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);

    let out = cutspec(&["spec", "--instance", "r2_example"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = cutspec(&["verify", "all", "--seed", "11", "--samples", "300", "--report", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ra, rb);
    let report: Value = serde_json::from_slice(&ra).unwrap();
    assert_eq!(report["schema"], "cutspec/1");
    assert_eq!(report["seed"], 11);
    assert_eq!(report["fixtures"].as_array().unwrap().len(), 8);
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn corrupted_fixture_is_rejected_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let broken = json!({
        "name": "m2_ov",
        "rank": 2,
        "algebra": {"kind": "pattern", "n": 2, "components": [["Ov", "F"], ["F", "Ov"]]}
    });
    write(dir.path(), "m2_ov.json", &broken);
    let out = Command::new(env!("CARGO_BIN_EXE_cutspec"))
        .args(["verify", "all"])
        .env("CUTSPEC_FIXTURES", dir.path())
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
    let err = stderr(&out);
    assert!(err.contains("not closed") && err.contains("J12·J21"), "{err}");
}

#[test]
fn fixture_dir_flag_replaces_a_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let m3 = json!({
        "name": "m2_ov",
        "rank": 1,
        "algebra": {"kind": "pattern", "n": 1, "components": [["Ov"]]}
    });
    write(dir.path(), "m2_ov.json", &m3);
    let d = dir.path().to_str().unwrap();
    let v = stdout_json(&cutspec(&["--fixture-dir", d, "spec", "--instance", "m2_ov"]));
    assert_eq!(v["rank"], 1);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
}

#[test]
fn instance_files() {
    let dir = tempfile::tempdir().unwrap();
    let by_name = write(
        dir.path(),
        "by_name.json",
        &json!({"algebra": "m2_ov", "rank": 1, "qv": "min_formula", "sampling": {"count": 100, "seed": 4}}),
    );
    let v = stdout_json(&cutspec(&["qv", "--instance", &by_name, "--element", r#"{"e21": [[1, 1, [5]]]}"#]));
    assert_eq!(v["qv"], "min_formula");
    assert_eq!(v["value"], json!({"cut": "prefix", "p": [5]}));

    let out = cutspec(&["verify", &by_name]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((report["samples"].clone(), report["seed"].clone()), (json!(100), json!(4)));

    let inline = write(
        dir.path(),
        "upper.json",
        &json!({"rank": 1, "algebra": {"kind": "pattern", "n": 2, "components": [["Ov", "F"], ["zero", "Ov"]]}}),
    );
    let v = stdout_json(&cutspec(&["spec", "--instance", &inline]));
    assert_eq!(v["instance"], "upper");

    let bad = write(dir.path(), "bad.json", &json!({"rank": 1, "algebra": {"kind": "pattern", "n": 1, "components": [["Q"]]}}));
    let out = cutspec(&["spec", "--instance", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("$.algebra.components[0][0]"), "{}", stderr(&out));

    std::fs::write(dir.path().join("syntax.json"), "{\"rank\": 1,\n  \"algebra\": }").unwrap();
    let out = cutspec(&["spec", "--instance", dir.path().join("syntax.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn unknown_fixture_and_flags() {
    let out = cutspec(&["verify", "no_such_fixture"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cutspec(&["verify", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
