//! End-to-end tests of the eulersym binary: output shapes, exit codes,
//! format round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulersym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn chars_text_lists_quadratic_character() {
    let out = run(&["chars", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0, 1, -1"), "nontrivial row missing: {text}");
    assert!(text.contains("yes"), "primitivity column missing");
}

#[test]
fn chars_even_modulus_exits_2() {
    let out = run(&["chars", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("odd"), "diagnostic missing: {err}");
}

#[test]
fn chars_primitive_only_filters() {
    let all = stdout(&run(&["chars", "9", "--format", "json"]));
    let primitive = stdout(&run(&["chars", "9", "--format", "json", "--primitive-only"]));
    assert_eq!(all.lines().count(), 6);
    assert!(primitive.lines().count() < 6);
    for line in primitive.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["primitive"], serde_json::Value::Bool(true));
    }
}

#[test]
fn euler_classical_values() {
    let out = run(&["euler", "-d", "1", "-n", "3", "--format", "json"]);
    assert!(out.status.success());
    let values: Vec<String> = stdout(&out)
        .lines()
        .map(|line| {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            v["value"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(values, ["1", "-1/2", "0", "1/4"]);
}

#[test]
fn powersum_classical_value() {
    let out = run(&["powersum", "-d", "1", "-k", "2", "-n", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,char_index,k,limit,value"));
    assert!(text.lines().any(|l| l == "1,0,2,4,10"));
}

#[test]
fn padic_classical_valuations() {
    let out = run(&[
        "padic", "-d", "1", "-n", "1", "-p", "3", "--levels", "4", "--format", "json",
    ]);
    assert!(out.status.success());
    let valuations: Vec<String> = stdout(&out)
        .lines()
        .map(|line| {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            v["valuation"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(valuations, ["1", "2", "3", "4"]);
}

#[test]
fn padic_rejects_prime_dividing_modulus() {
    let out = run(&["padic", "-d", "3", "-n", "1", "-p", "3", "--levels", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_default_sweep_passes() {
    let out = run(&["verify", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 240);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "pass", "failing record: {line}");
    }
}

/// Emitted JSON records re-serialize to the same bytes, both through the
/// generic value model and field by field.
#[test]
fn verify_json_roundtrip() {
    let out = run(&[
        "verify", "--theorems", "2", "--moduli", "3", "--max-n", "2", "--weights",
        "1,3,5;1,2,3", "--format", "json",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line);
    }
}

#[test]
fn verify_parity_skip_records() {
    let out = run(&[
        "verify", "--theorems", "2", "--moduli", "3", "--max-n", "1", "--weights", "1,2,3",
        "--format", "json",
    ]);
    // Skips are not failures.
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["verdict"], "skip");
        assert_eq!(v["skip_reason"], "parity");
    }
}

#[test]
fn verify_csv_has_matching_columns() {
    let out = run(&[
        "verify", "--theorems", "1", "--moduli", "1", "--max-n", "1", "--weights", "1,1,1",
        "--format", "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "theorem,d,char_index,char_order,conductor,primitive,n,w1,w2,w3,grid_size,verdict,skip_reason,discrepancy"
    );
    let cols = header.split(',').count();
    for line in lines {
        assert_eq!(line.split(',').count(), cols, "ragged row: {line}");
    }
}

#[test]
fn verify_inject_fault_exits_1_with_discrepancy() {
    let out = run(&["verify", "--inject-fault", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let failures: Vec<&str> = text
        .lines()
        .filter(|line| line.contains("\"verdict\":\"fail\""))
        .collect();
    assert_eq!(failures.len(), 1);
    let v: serde_json::Value = serde_json::from_str(failures[0]).unwrap();
    let disc = &v["discrepancy"];
    assert!(disc["expressions"].is_array());
    assert!(disc["left"] != disc["right"]);
}

#[test]
fn verify_out_file_matches_stdout() {
    let path: PathBuf = std::env::temp_dir().join(format!("eulersym-out-{}.jsonl", std::process::id()));
    let to_stdout = stdout(&run(&["verify", "--format", "json"]));
    let out = run(&["verify", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file, to_stdout);
}

#[test]
fn verify_char_indices_filter() {
    let out = run(&[
        "verify", "--theorems", "8", "--moduli", "5", "--max-n", "1", "--weights", "1,1,1",
        "--char-indices", "0,2", "--format", "json",
    ]);
    assert!(out.status.success());
    let indices: Vec<u64> = stdout(&out)
        .lines()
        .map(|line| {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            v["char_index"].as_u64().unwrap()
        })
        .collect();
    assert_eq!(indices, [0, 0, 2, 2]);
}

#[test]
fn verify_rejects_bad_usage() {
    for args in [
        vec!["verify", "--moduli", "2"],
        vec!["verify", "--weights", "1,2"],
        vec!["verify", "--weights", "0,1,1"],
        vec!["verify", "--theorems", "0"],
        vec!["verify", "--theorems", "9"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}
