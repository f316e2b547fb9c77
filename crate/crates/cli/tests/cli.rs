use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::{Registry, Validator};
use serde_json::Value;

fn dupcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dupcalc"))
        .args(args)
        .output()
        .expect("dupcalc runs")
}

fn code(args: &[&str]) -> i32 {
    let out = dupcalc(args);
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// A validator for one shipped schema, with the others available to `$ref`.
fn validator(name: &str) -> Validator {
    let mut registry = Registry::new();
    for other in ["algebra.schema.json", "duplicator.schema.json", "result.schema.json", "report.schema.json"] {
        let v = load(other);
        let id = v["$id"].as_str().unwrap().to_string();
        registry = registry.add(id, v).unwrap();
    }
    let registry = registry.prepare().unwrap();
    jsonschema::options().with_registry(&registry).build(&load(name)).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = validator(name);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = dupcalc(&full);
    let doc = serde_json::from_str(&stdout(&out)).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&out)));
    (out.status.code().unwrap(), doc)
}

#[test]
fn check_duplicator_in_witness_mode_passes() {
    assert_eq!(code(&["check-duplicator", "catalog:Gamma_BLu", "--base", "catalog:2Du", "--mode", "witness"]), 0);
}

#[test]
fn duplicate_to_file_then_iso_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&["duplicate", "catalog:Gamma_BLu", "catalog:2Du", "-o", out]), 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_valid("algebra.schema.json", &written);
    assert_eq!(code(&["iso", out, "catalog:4_DBu"]), 0);
    assert_eq!(code(&["iso", out, "catalog:4_DB"]), 2, "signatures differ without --on");
    assert_eq!(code(&["iso", out, "catalog:3_Du", "--on", "tjoin,tmeet"]), 2, "3_Du has no tjoin");
    assert_eq!(code(&["iso", "catalog:M3", "catalog:N5"]), 1);
}

#[test]
fn reproduce_table1_json_is_a_valid_passing_report() {
    let (status, doc) = json_of(&["reproduce", "table1"]);
    assert_eq!(status, 0);
    assert_valid("report.schema.json", &doc);
    assert_eq!(doc.as_array().unwrap().len(), 13);
}

#[test]
fn exit_codes_follow_the_contract() {
    // 1: a check that fails.
    assert_eq!(code(&["si", "catalog:3_Du"]), 1);
    assert_eq!(code(&["residuum", "catalog:N5"]), 1);
    assert_eq!(code(&["check-duplicator", "catalog:Gamma_1", "--condition", "P", "--mode", "search"]), 1);
    // 2: usage and input errors.
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["si"]), 2);
    assert_eq!(code(&["si", "catalog:no-such-algebra"]), 2);
    assert_eq!(code(&["si", "no/such/file.json"]), 2);
    assert_eq!(code(&["reproduce", "table9"]), 2);
    assert_eq!(code(&["duplicate-mixed", "catalog:Gamma_BLu", "catalog:2Du", "catalog:3Du"]), 2);
    // 3: a budget left the answer open.
    assert_eq!(code(&["check-duplicator", "catalog:Gamma_1", "--condition", "P", "--mode", "search", "--cap", "0"]), 3);
    assert_eq!(code(&["homs", "catalog:3_Du", "catalog:3_Du", "--cap", "2"]), 3);
    // 0: help and passing checks.
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["si", "catalog:4_DBu"]), 0);
}

#[test]
fn malformed_files_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"name\": \"x\",\n  \"size\": 2 oops\n}\n").unwrap();
    let out = dupcalc(&["si", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column 13"), "{}", stderr(&out));

    std::fs::write(&bad, "{\"name\": \"g\"}").unwrap();
    let out = dupcalc(&["check-duplicator", bad.to_str().unwrap(), "--base", "catalog:2Du"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn duplicator_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let (_, shown) = json_of(&["catalog", "show", "Gamma_BLu"]);
    assert_valid("result.schema.json", &shown);
    let payload = &shown["result"]["payload"];
    assert_valid("duplicator.schema.json", payload);
    std::fs::write(&path, serde_json::to_string_pretty(payload).unwrap()).unwrap();
    assert_eq!(code(&["check-duplicator", path.to_str().unwrap(), "--base", "catalog:2Du", "catalog:N5"]), 0);
    assert_eq!(code(&["check-duplicator", path.to_str().unwrap()]), 2, "a file has no default base class");
}

#[test]
fn json_documents_validate_against_the_schemas() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-duplicator", "catalog:Gamma_BLu", "--base", "catalog:2Du", "catalog:3Du"],
        vec!["check-duplicator", "catalog:Gamma_IT", "--condition", "D"],
        vec!["check-duplicator", "catalog:Gamma_2", "--condition", "L'", "--mode", "search"],
        vec!["duplicate", "catalog:Gamma_BLu", "catalog:3Du"],
        vec!["duplicate-mixed", "catalog:Gamma_pBL", "catalog:2Du", "catalog:3Du"],
        vec!["lift", "catalog:Gamma_BLu", "catalog:2Du", "catalog:3Du", "--map", "0,2"],
        vec!["verify-axioms", "catalog:4_DBu"],
        vec!["congruences", "catalog:3Du", "--transfer", "catalog:Gamma_BLu"],
        vec!["si", "catalog:3Du"],
        vec!["homs", "catalog:2Du", "catalog:3Du"],
        vec!["iso", "catalog:4_DBu", "catalog:4_DBu"],
        vec!["free", "catalog:2Du", "--gens", "2"],
        vec!["residuum", "catalog:N5"],
        vec!["separate", "catalog:4_DBu", "--into", "catalog:4_DBu"],
        vec!["smoke", "catalog:Gamma_BLu", "catalog:2Du", "catalog:3Du"],
        vec!["catalog", "list"],
        vec!["catalog", "show", "2x2_Du"],
        vec!["catalog", "show", "bilattice"],
    ];
    for args in cases {
        let (status, doc) = json_of(&args);
        assert!(status == 0 || status == 1, "{args:?} exited {status}");
        assert_valid("result.schema.json", &doc);
        let expected = if status == 0 { "pass" } else { "fail" };
        assert_eq!(doc["verdict"], expected, "{args:?}");
    }
}

#[test]
fn output_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = dupcalc(&["reproduce", "table2", "--row", "TL/D^4", "--json", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("report.schema.json", &doc);
    assert_eq!(doc[0]["row"], "TL/D^4");
    assert_eq!(code(&["reproduce", "table2", "--row", "nope"]), 2);
}

#[test]
fn search_flags_reach_the_engine() {
    let out = dupcalc(&["check-duplicator", "catalog:Gamma_BLu", "--base", "catalog:2Du", "--mode", "search", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for c in doc["result"]["conditions"].as_array().unwrap() {
        assert_eq!(c["mode"], "search");
    }
    // Depth 0 admits only projections, so (L) is left open.
    assert_eq!(
        code(&["check-duplicator", "catalog:Gamma_BLu", "--base", "catalog:2Du", "--mode", "search", "--depth", "0", "--condition", "L"]),
        3
    );
    assert_eq!(
        code(&["check-duplicator", "catalog:Gamma_BLu", "--base", "catalog:2Du", "--mode", "search", "--budget-ms", "0", "--condition", "M"]),
        3
    );
}

#[test]
fn text_output_has_a_verdict_line() {
    let out = dupcalc(&["homs", "catalog:2Du", "catalog:3Du"]);
    let text = stdout(&out);
    assert!(text.starts_with("pass: 6 homomorphisms 2_Du -> 3_Du\n"), "{text}");
    assert_eq!(text.lines().count(), 7);
    let out = dupcalc(&["catalog", "list", "--kind", "duplicator"]);
    assert!(stdout(&out).lines().any(|l| l.starts_with("Gamma_BLu ")));
}

#[test]
fn schemas_reject_malformed_documents() {
    let (_, mut doc) = json_of(&["duplicate", "catalog:Gamma_BLu", "catalog:2Du"]);
    assert!(validator("result.schema.json").is_valid(&doc));
    doc["result"]["algebra"].as_object_mut().unwrap().remove("ops");
    assert!(!validator("result.schema.json").is_valid(&doc), "nested algebra is checked");
    doc["verdict"] = "maybe".into();
    assert!(!validator("result.schema.json").is_valid(&doc));
    let report = serde_json::json!([{ "row": "r", "scope": "exact", "claims": [{ "id": "c", "verdict": "pass", "artifact": {}, "millis": 0 }] }]);
    assert!(!validator("report.schema.json").is_valid(&report), "artifacts need a summary");
}
