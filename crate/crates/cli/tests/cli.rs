use std::process::{Command, Output};

use serde_json::Value;

fn symroots(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symroots"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn machine(args: &[&str]) -> Value {
    let mut all = vec!["solve"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--format", "machine"]);
    let o = symroots(&all);
    serde_json::from_str(&stdout(&o)).expect("machine output is JSON")
}

fn tmp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("symroots-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn machine_output_is_byte_identical_across_runs() {
    let args = ["solve", "(a-x^2)^3=(b-x^3)^2", "--param", "a=5", "--param", "b=2", "--format", "machine"];
    let first = symroots(&args);
    let second = symroots(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn machine_output_fields() {
    let v = machine(&["(x^3+a)^3+a=x"]);
    for key in ["input", "structure", "assumptions", "roots", "verification", "versions"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["structure"], "iterate");
    let roots = v["roots"].as_array().unwrap();
    let count: u64 = roots.iter().map(|r| r["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(count, 9);
    assert!(roots.iter().all(|r| r["numeric"].is_null()));
    assert_eq!(v["verification"]["passed"], true);
    assert_eq!(v["verification"]["samples"], 20);
}

#[test]
fn numeric_values_present_without_parameters() {
    let v = machine(&["x^2-2=0"]);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let re: f64 = roots[0]["numeric"]["re"].as_str().unwrap().parse().unwrap();
    assert!((re.abs() - 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn exit_codes() {
    assert_eq!(symroots(&["solve", "x^2-2=0"]).status.code(), Some(0));
    assert_eq!(symroots(&["solve", "x^2-2=0", "--no-verify"]).status.code(), Some(2));
    assert_eq!(symroots(&["solve", "x^7-x-1=0"]).status.code(), Some(3));
    assert_eq!(symroots(&["solve", "x^2+"]).status.code(), Some(4));
    assert_eq!(symroots(&["solve", "x+y=1"]).status.code(), Some(1));
    assert_eq!(symroots(&["solve", "x^2-2=0", "--param", "c=1"]).status.code(), Some(1));
}

#[test]
fn parse_errors_name_the_position() {
    let o = symroots(&["solve", "x^2+*3=0"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn the_three_problems_solve_in_radicals() {
    for (text, n, structure) in [
        ("(a-x^2)^3=(b-x^3)^2", 6, "hidden-symmetric"),
        ("(x^3+a)^3+a=x", 9, "iterate"),
        ("(x^3+x+b)^3+x^3+2*b=0", 9, "shifted-iterate"),
    ] {
        let v = machine(&[text]);
        assert_eq!(v["structure"], structure, "{text}");
        let count: u64 = v["roots"].as_array().unwrap().iter().map(|r| r["multiplicity"].as_u64().unwrap()).sum();
        assert_eq!(count, n, "{text}");
        assert_eq!(v["verification"]["passed"], true, "{text}");
    }
}

#[test]
fn shifted_iterate_shape() {
    let v = machine(&["(2*x^3+x+2)^3+x^3+2=0"]);
    assert_eq!(v["structure"], "shifted-iterate");
    let count: u64 = v["roots"].as_array().unwrap().iter().map(|r| r["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(count, 9);
}

#[test]
fn as_iterate_flag() {
    let v = machine(&["x^9+3*a*x^6+3*a^2*x^3+a^3+a-x=0", "--as-iterate", "f=x^3+a"]);
    assert_eq!(v["structure"], "iterate");
    let o = symroots(&["solve", "x^9-x=0", "--as-iterate", "f=x^3+1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn testproblems_table() {
    let o = symroots(&["testproblems", "--which", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("a=3 "));
    let o = symroots(&["testproblems", "--format", "machine"]);
    let rows: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 14);
    let row = rows
        .iter()
        .find(|r| r["problem"] == 1 && r["params"]["a"] == "5" && r["params"]["b"] == "2")
        .unwrap();
    assert_eq!(row["roots"], 6);
    assert_eq!(row["maple"], 6);
    assert_eq!(row["mathematica"], 2);
    assert!(rows.iter().all(|r| r["verified"] == true));
}

#[test]
fn verify_passes_on_problem_one() {
    let o = symroots(&["verify", "(a-x^2)^3=(b-x^3)^2", "--samples", "20", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_fails_below_working_precision() {
    let o = symroots(&["verify", "(a-x^2)^3=(b-x^3)^2", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn saved_report_round_trip() {
    let o = symroots(&["solve", "(x^3+x+b)^3+x^3+2*b=0", "--format", "machine"]);
    let path = tmp_file("full.json", &stdout(&o));
    let v = symroots(&["verify", "--report", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    std::fs::remove_file(path).ok();
}

#[test]
fn truncated_report_is_a_count_mismatch() {
    let o = symroots(&["solve", "(a-x^2)^3=(b-x^3)^2", "--format", "machine"]);
    let mut doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    doc["roots"].as_array_mut().unwrap().truncate(4);
    let path = tmp_file("truncated.json", &doc.to_string());
    let v = symroots(&["verify", "--report", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("expected 6 roots with multiplicity, found 4"), "{}", stdout(&v));
    std::fs::remove_file(path).ok();
}

#[test]
fn corrupted_report_fails() {
    let o = symroots(&["solve", "x^2+y^2=5; x*y=2", "--format", "machine"]);
    let mut doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    doc["roots"][0]["expr"] = Value::String("(2, 3)".into());
    let path = tmp_file("corrupt.json", &doc.to_string());
    let v = symroots(&["verify", "--report", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    std::fs::remove_file(path).ok();
}

#[test]
fn decimal_bindings_use_the_numeric_fallback() {
    let v = machine(&["(x^3+a)^3+a=x", "--param", "a=3.0"]);
    assert_eq!(v["structure"], "numeric");
    assert_eq!(v["roots"].as_array().unwrap().len(), 9);
    let o = symroots(&["solve", "(a-x^2)^3=(b-x^3)^2", "--param", "a=7.0"]);
    assert_eq!(o.status.code(), Some(1), "unbound b with a decimal binding");
}

#[test]
fn precision_flag_controls_digits() {
    let v = machine(&["x^2-2=0", "--precision", "40"]);
    let re = v["roots"][0]["numeric"]["re"].as_str().unwrap().trim_start_matches('-').to_string();
    assert_eq!(re, "1.41421356237309504880168872420969807857");
    let o = symroots(&["solve", "x^2-2=0", "--precision", "41"]);
    assert_eq!(o.status.code(), Some(1));
}
