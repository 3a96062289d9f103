use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chevtwist"));
    cmd.env_remove("CHEVTWIST_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}");
}

/// Run a command expected to succeed; validate envelope and result schemas.
fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_valid("envelope", &doc);
    assert_valid(doc["command"].as_str().unwrap(), &doc["result"]);
    doc["result"].clone()
}

fn failing(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("errors are JSON too");
    assert_valid("envelope", &doc);
    doc["error"].clone()
}

#[test]
fn rootsys_a2_has_six_roots() {
    let r = ok(&["rootsys", "--type", "A", "--rank", "2"]);
    assert_eq!(r["roots"].as_array().unwrap().len(), 6);
    assert_eq!(r["positive_count"], 3);
    let e6 = ok(&["rootsys", "--type", "E"]);
    assert_eq!(e6["roots"].as_array().unwrap().len(), 72);
}

#[test]
fn element_with_zero_parameter_is_identity() {
    let r = ok(&["element", "--type", "A", "--rank", "1", "--field", "Q", "--word", "x a1 0"]);
    let m = r["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 3);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(v, if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn fundamental_picture() {
    let r = ok(&["element", "--type", "A", "--rank", "1", "--picture", "fundamental", "--word", "n a1 2"]);
    assert_eq!(r["matrix"], serde_json::json!([["0", "2"], ["-1/2", "0"]]));
    let r = ok(&["element", "--type", "A", "--rank", "1", "--picture", "fundamental", "--word", "h a1 -3"]);
    assert_eq!(r["matrix"], serde_json::json!([["-3", "0"], ["0", "-1/3"]]));
    failing(&["element", "--type", "A", "--rank", "2", "--picture", "fundamental", "--word", "x a1 1"], 1);
}

#[test]
fn witness_certificate_has_distinct_invariants() {
    let r = ok(&["witness", "--type", "A", "--rank", "2", "--field", "Q", "--aut", "id", "--count", "5"]);
    let ws = r["witnesses"].as_array().unwrap();
    assert_eq!(ws.len(), 5);
    let invariants: std::collections::BTreeSet<String> = ws.iter().map(|w| w["invariant"].to_string()).collect();
    assert_eq!(invariants.len(), 5);
    assert_eq!(r["certified_lower_bound"], 5);
}

#[test]
fn twisted_witness_and_twist_report() {
    let r = ok(&["witness", "--type", "A", "--rank", "3", "--field", "Q(sqrt,-1)", "--aut", "field:conj", "--sigma", "conj", "--count", "4"]);
    assert_eq!(r["twisted"], true);
    let t = ok(&["twist", "--type", "A", "--rank", "2", "--field", "Q(sqrt,-1)", "--sigma", "conj", "--params", "1,2+s"]);
    assert_eq!(t["sigma_order"], 2);
    assert_eq!(t["symmetry"], serde_json::json!([2, 1]));
    let kinds: Vec<&str> = t["orbits"].as_array().unwrap().iter().map(|o| o["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds.iter().filter(|k| **k == "adjacent").count(), 2);
}

#[test]
fn finite_counts() {
    let r = ok(&["reidemeister", "--type", "A", "--rank", "1", "--field", "F(5,1)"]);
    assert_eq!(r["group"]["order"], 60);
    // A_5 has five conjugacy classes
    assert_eq!(r["reidemeister_number"], 5);
    let sizes: u64 = r["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(sizes, 60);
    let r = ok(&["reidemeister", "--type", "A", "--rank", "2", "--field", "F(2,2)", "--sigma", "frob"]);
    assert_eq!(r["group"]["order"], 72);
    let s = ok(&["isogredience", "--type", "A", "--rank", "1", "--field", "F(3,2)", "--aut", "diag:z"]);
    assert_eq!(s["group"]["order"], 360);
    assert_eq!(s["isogredience_number"], s["reidemeister_number"]);
    let t = ok(&["twist", "--type", "A", "--rank", "2", "--field", "F(2,2)", "--sigma", "frob", "--params", "1,z", "--enumerate"]);
    assert_eq!(t["enumeration"]["order"], 72);
}

#[test]
fn remaining_commands_validate() {
    let b = ok(&["basis", "--type", "D", "--rank", "4"]);
    assert_eq!(b["kind"], "D");
    let rel = ok(&["relations", "--type", "A", "--rank", "3", "--trials", "10"]);
    assert_eq!(rel["r2_checks"], 10);
    let inv = ok(&["invariant", "--type", "A", "--rank", "1", "--field", "Q", "--word", "h a1 2"]);
    // eigenvalues 4, 1/4 and 1 on e_a, e_-a, h
    assert_eq!(inv["invariant"], serde_json::json!(["-1", "21/4", "-21/4", "1"]));
    let tr = ok(&["trace-kt", "--type", "A", "--rank", "1", "--m", "1"]);
    assert_eq!(tr["trace"], "(T^4+T^2+1)/(T^2)");
}

#[test]
fn seeded_output_is_byte_identical() {
    let args = ["relations", "--type", "A", "--rank", "2", "--trials", "15", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let iso = ["isogredience", "--type", "A", "--rank", "1", "--field", "F(5,1)", "--aut", "diag:2"];
    assert_eq!(run(&iso).stdout, run(&iso).stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("chevtwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let args = ["rootsys", "--type", "D", "--rank", "4"];
    let stdout = run(&args).stdout;
    let out = bin().args(args).arg("--output").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_and_error_json() {
    assert_eq!(failing(&["rootsys", "--type", "B", "--rank", "2"], 1)["code"], "root_system");
    assert_eq!(failing(&["rootsys", "--type", "A"], 1)["code"], "usage");
    assert_eq!(failing(&["rootsys", "--type", "D", "--rank", "3"], 1)["code"], "root_system");
    assert_eq!(failing(&["element", "--type", "A", "--rank", "2", "--word", "y a1 1"], 1)["code"], "group");
    let e = failing(&["witness", "--type", "A", "--rank", "2", "--field", "F(5,1)"], 2);
    assert_eq!(e["code"], "twconj.finite_field_rejected");
    let e = failing(&["witness", "--type", "A", "--rank", "1", "--field", "RF(Q,T)", "--aut", "field:affine(1,1)"], 2);
    assert_eq!(e["code"], "twconj.infinite_order_field_part");
    let e = failing(&["trace-kt", "--type", "A", "--rank", "1", "--m", "0"], 2);
    assert_eq!(e["code"], "twconj.invalid_exponent");
    let e = failing(&["reidemeister", "--type", "A", "--rank", "1", "--field", "F(5,1)", "--budget", "20"], 3);
    assert_eq!(e["code"], "budget_exceeded");
    let out = bin().env("CHEVTWIST_BUDGET", "20").args(["reidemeister", "--type", "A", "--rank", "1", "--field", "F(5,1)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
