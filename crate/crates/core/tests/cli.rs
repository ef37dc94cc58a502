mod common;

use std::process::{Command, Output};

use serde_json::Value;

use common::fixture_path;

fn idealdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealdec"))
        .args(args)
        .env_remove("IDEALDEC_SEED")
        .output()
        .expect("binary runs")
}

fn decompose(name: &str, extra: &[&str]) -> Output {
    let path = fixture_path(name);
    let mut args = vec!["decompose", "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    idealdec(&args)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema() -> Value {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn four_lines_json() {
    let out = decompose("four_lines.ideal", &["--dim", "1", "--seed", "42", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["s"], 2);
    assert_eq!(v["seed"], 42);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    for c in comps {
        assert_eq!(c["rational_degree"], 2);
        assert_eq!(c["multiplicity"], 1);
        assert_eq!(c["absolute_count"], 2);
        assert_eq!(c["absolute_degree"], 1);
        let hf: Vec<u64> = c["hilbert_values"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(hf[..4], [1, 2, 3, 4]);
        assert_eq!(c["hilbert_polynomial"], serde_json::json!(["1", "1"]));
        for m in c["initial_ideal"].as_array().unwrap() {
            assert_eq!(m["exponents"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).sum::<u64>(), 1);
        }
    }
}

#[test]
fn double_line_text_table() {
    let out = decompose("double_line.ideal", &["--dim", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().position(|l| l.split_whitespace().next() == Some("j")).expect("table header");
    let row: Vec<&str> = text.lines().nth(header + 1).unwrap().split_whitespace().collect();
    // j rat_deg mult r abs_deg prime
    assert_eq!(&row[..5], ["1", "1", "2", "1", "1"]);
    assert!(text.contains("isolating mod"));
}

#[test]
fn bad_file_is_an_input_error() {
    let out = decompose("bad.ideal", &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("unknown variable"), "{err}");
    assert!(out.stdout.is_empty());

    let out = idealdec(&["decompose", "--input", "/nonexistent/x.ideal"]);
    assert_eq!(out.status.code(), Some(1));
    let out = decompose("four_lines.ideal", &["--dim", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = decompose("four_lines.ideal", &["--prime-override", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = idealdec(&["decompose", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_retries_exit_two() {
    // these coordinate changes all have a plane of two lines parallel to a
    // projection direction, or no usable prime
    let out = decompose("four_lines.ideal", &["--seed", "46"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("attempt 1:"), "{err}");
}

#[test]
fn json_is_byte_identical() {
    for name in ["four_lines.ideal", "double_line.ideal", "degree4.ideal"] {
        let a = decompose(name, &["--seed", "7", "--format", "json"]);
        let b = decompose(name, &["--seed", "7", "--format", "json"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{name}");
    }
}

#[test]
fn seed_from_environment() {
    let path = fixture_path("degree4.ideal");
    let env = Command::new(env!("CARGO_BIN_EXE_idealdec"))
        .args(["decompose", "--input", path.to_str().unwrap(), "--format", "json"])
        .env("IDEALDEC_SEED", "5")
        .output()
        .unwrap();
    let flag = decompose("degree4.ideal", &["--seed", "5", "--format", "json"]);
    assert_eq!(json(&env)["seed"], 5);
    assert_eq!(env.stdout, flag.stdout);
}

#[test]
fn reports_match_the_schema() {
    let validator = jsonschema::validator_for(&schema()).expect("schema compiles");
    for name in ["four_lines.ideal", "double_line.ideal", "degree4.ideal"] {
        for flags in [&["--seed", "42"][..], &["--seed", "3", "--order", "degrevlex", "--backend", "groebner"]] {
            let mut args = flags.to_vec();
            args.extend(["--format", "json"]);
            let v = json(&decompose(name, &args));
            let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{name}: {errors:?}");
        }
    }
    // the schema rejects extra and missing fields
    let mut v = json(&decompose("degree4.ideal", &["--format", "json"]));
    v["extra"] = Value::Bool(true);
    assert!(!validator.is_valid(&v));
    v.as_object_mut().unwrap().remove("extra");
    v.as_object_mut().unwrap().remove("total_degree");
    assert!(!validator.is_valid(&v));
}

#[test]
fn help_lists_flags() {
    let out = idealdec(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("decompose"));
    let out = idealdec(&["decompose", "--help"]);
    let help = String::from_utf8(out.stdout).unwrap();
    for flag in ["--input", "--dim", "--seed", "--format", "--order", "--backend", "--prime-override", "--max-retries", "--coeff-bound"] {
        assert!(help.contains(flag), "{flag}");
    }
}
