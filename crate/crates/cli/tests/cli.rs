use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn multiloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiloop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = multiloop(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("valid schema")
}

fn assert_valid(schema: &jsonschema::JSONSchema, v: &Value) {
    if let Err(errors) = schema.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}\n{v:#}");
    }
}

#[test]
fn classify_d5_two_transpositions() {
    let o = multiloop(&["classify", "--type", "D", "--rank", "5", "--twist", "1", "--sigma", "(0 1)(4 5)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("D_5^(1,2b)"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("relative type") && l.ends_with("B_3")), "{out}");
}

#[test]
fn classify_full_rotation_is_anisotropic() {
    let v = json_of(&["classify", "--type", "A", "--rank", "4", "--twist", "1", "--sigma", "(0 1 2 3 4)", "--json"]);
    assert_eq!(v["relative_type"], "A_0");
    assert_eq!(v["sears_label"], Value::Null);
    assert_eq!(v["label"], "A_4^(1,rot(1))");
}

#[test]
fn classify_twisted_e6_resolves() {
    let v = json_of(&["classify", "--type", "E", "--rank", "6", "--twist", "2", "--sigma", "", "--json"]);
    assert_eq!(v["label"], "E_6^(1,2)");
    assert_eq!(v["source"]["affine_type"], "E_6^(2)");
    assert_eq!(v["source"]["tag"], "1");
}

#[test]
fn exit_code_bad_label() {
    for args in [
        ["classify", "--type", "E", "--rank", "5", "--twist", "1"],
        ["classify", "--type", "Q", "--rank", "3", "--twist", "1"],
        ["classify", "--type", "A", "--rank", "3", "--twist", "4"],
    ] {
        assert_eq!(multiloop(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exit_code_bad_automorphism_shows_entry() {
    let o = multiloop(&["classify", "--type", "D", "--rank", "5", "--sigma", "(0 2)"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("a[") && err.contains("] = "), "{err}");
    let o = multiloop(&["fold", "--type", "D", "--rank", "5", "--sigma", "(0 9)"]);
    assert_eq!(o.status.code(), Some(3));
    let o = multiloop(&["classify", "--type", "D", "--rank", "5", "--sigma", "(0 1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn fold_prints_twisted_d4_diagram() {
    let o = multiloop(&["fold", "--type", "D", "--rank", "5", "--twist", "1", "--sigma", "(0 1)(4 5)", "--diagram"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("folded type     D_4^(2)"), "{out}");
    assert!(out.contains("type D_4^(2)\nnodes 4\n"), "{out}");
    assert!(out.contains("defects         s_0=1 s_2=1 s_3=1 s_4=1"), "{out}");
}

#[test]
fn fold_identity_echoes_input() {
    let out = stdout(&multiloop(&["fold", "--type", "E", "--rank", "6", "--sigma", "", "--diagram"]));
    let diagram = &out[out.find("\ntype ").unwrap() + 1..];
    assert!(diagram.starts_with("type E_6^(1)\nnodes 7\n"), "{out}");
    assert_eq!(diagram.matches("\nedge ").count(), 6);
}

#[test]
fn fold_transitive_exits_4() {
    let o = multiloop(&["fold", "--type", "A", "--rank", "5", "--sigma", "(0 1 2 3 4 5)"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("rotation"));
}

#[test]
fn enumerate_exceptional_family_e() {
    let v = json_of(&["enumerate", "--max-rank", "8", "--family", "E", "--format", "json"]);
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["E_6^(1,1)", "E_6^(1,2)", "E_6^(1,3)", "E_7^(1,1)", "E_7^(1,2)", "E_8^(1,1)"]);
}

#[test]
fn enumerate_low_rank_table() {
    let out = stdout(&multiloop(&["enumerate", "--max-rank", "2"]));
    for label in ["A_1^(1,rot(0))", "A_1^(1,rot(1))", "A_2^(1,rot(0))", "A_2^(1,rot(1))", "A_2^(1,2a)", "C_2^(1,1)", "C_2^(1,2)", "G_2^(1,1)"] {
        assert!(out.contains(label), "missing {label}\n{out}");
    }
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn enumerate_rejects_rank_zero() {
    assert_ne!(multiloop(&["enumerate", "--max-rank", "0"]).status.code(), Some(0));
}

#[test]
fn records_validate_against_schema() {
    let s = schema("classification_record.schema.json");
    let v = json_of(&["enumerate", "--max-rank", "8", "--format", "json"]);
    let records = v.as_array().unwrap();
    assert!(records.len() > 50);
    for r in records {
        assert_valid(&s, r);
    }
    assert_valid(&s, &json_of(&["classify", "--type", "D", "--rank", "4", "--twist", "3", "--sigma", "", "--json"]));
}

#[test]
fn fold_validates_against_schema() {
    let s = schema("folding_result.schema.json");
    for sigma in ["(0 1)(4 5)", "(0 5)(1 4)(2 3)", ""] {
        assert_valid(&s, &json_of(&["fold", "--type", "D", "--rank", "5", "--sigma", sigma, "--json"]));
    }
}

#[test]
fn pauli_output_validates_against_schema() {
    let s = schema("graded_element.schema.json");
    let v = json_of(&["quantum", "--pauli", "3"]);
    assert_valid(&s, &v["d"]);
    assert_valid(&s, &v["p"]);
    assert_eq!(v["d"]["g"], 3);
    // p_3(x₂): two subdiagonal ones and x₂ in the corner
    assert_eq!(v["p"]["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn quantum_rotation_parameters() {
    let v = json_of(&["quantum", "--rank", "5", "--q", "2", "--json"]);
    assert_eq!(v["g"], 2);
    assert_eq!(v["theta_exponent"], 2);
    assert_eq!(v["theta_order"], 3);
    assert_valid(&schema("cyc_number.schema.json"), &v["theta"]);
}

#[test]
fn verify_reports_validate_and_pass() {
    let s = schema("suite_report.schema.json");
    for args in [
        vec!["verify", "--suite", "iota", "--max-m", "60", "--json"],
        vec!["verify", "--suite", "folding", "--max-rank", "6", "--json"],
        vec!["verify", "--suite", "quantum-iso", "--max-m", "2", "--box", "2", "--json"],
    ] {
        let v = json_of(&args);
        assert_valid(&s, &v);
        assert_eq!(v["failures"], 0, "{v}");
    }
}

#[test]
fn verify_unknown_suite_is_rejected() {
    let o = multiloop(&["verify", "--suite", "nope"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("possible values"));
}

#[test]
fn tables_include_c2_caveat() {
    let out = stdout(&multiloop(&["tables", "--max-rank", "2"]));
    assert!(out.lines().any(|l| l.starts_with("C_2^(1,2)") && l.ends_with("A_1^(1,1)*")), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["enumerate", "--max-rank", "6", "--format", "json"],
        vec!["verify", "--suite", "anisotropy", "--samples", "5", "--json"],
        vec!["fold", "--type", "E", "--rank", "6", "--sigma", "(1 5)(2 4)", "--diagram"],
    ] {
        assert_eq!(multiloop(&args).stdout, multiloop(&args).stdout, "{args:?}");
    }
}
