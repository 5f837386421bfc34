//! CLI behavior: reports validate against the shipped JSON schema, text and
//! JSON formats expose the same check set, output is deterministic modulo
//! timings, and exit codes follow the pass/fail/usage contract.

use clap::Parser;
use serde_json::Value;
use sl2q_cli::{execute, Cli};
use std::process::Command;

fn report_json(args: &[&str]) -> Value {
    let mut argv = vec!["sl2q"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).expect("arguments parse");
    serde_json::to_value(execute(&cli)).expect("report serializes")
}

// --- A small validator for the JSON Schema subset the shipped schema uses:
// type, required, properties, additionalProperties, enum, items, minimum.

fn validate(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(allowed) = schema.get("enum") {
        let allowed = allowed.as_array().expect("enum is an array");
        if !allowed.iter().any(|v| v == value) {
            errors.push(format!("{}: {} not in {:?}", path, value, allowed));
        }
        return;
    }
    match schema.get("type").and_then(Value::as_str) {
        Some("object") => {
            let Value::Object(map) = value else {
                errors.push(format!("{}: expected object", path));
                return;
            };
            let empty = serde_json::Map::new();
            let props = schema
                .get("properties")
                .and_then(Value::as_object)
                .unwrap_or(&empty);
            if let Some(required) = schema.get("required").and_then(Value::as_array) {
                for key in required {
                    let key = key.as_str().unwrap();
                    if !map.contains_key(key) {
                        errors.push(format!("{}: missing required field '{}'", path, key));
                    }
                }
            }
            let additional_ok = schema
                .get("additionalProperties")
                .and_then(Value::as_bool)
                .unwrap_or(true);
            for (key, sub) in map {
                match props.get(key) {
                    Some(sub_schema) => {
                        validate(sub_schema, sub, &format!("{}.{}", path, key), errors)
                    }
                    None if !additional_ok => {
                        errors.push(format!("{}: unexpected field '{}'", path, key))
                    }
                    None => {}
                }
            }
        }
        Some("array") => {
            let Value::Array(items) = value else {
                errors.push(format!("{}: expected array", path));
                return;
            };
            if let Some(item_schema) = schema.get("items") {
                for (idx, item) in items.iter().enumerate() {
                    validate(item_schema, item, &format!("{}[{}]", path, idx), errors);
                }
            }
        }
        Some("string") => {
            if !value.is_string() {
                errors.push(format!("{}: expected string", path));
            }
        }
        Some("number") => {
            let Some(n) = value.as_f64() else {
                errors.push(format!("{}: expected number", path));
                return;
            };
            if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
                if n < min {
                    errors.push(format!("{}: {} below minimum {}", path, n, min));
                }
            }
        }
        other => panic!("schema node with unsupported type {:?}", other),
    }
}

fn assert_valid_against_schema(report: &Value) {
    let schema_text = include_str!("../../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(schema_text).expect("schema parses");
    let mut errors = Vec::new();
    validate(&schema, report, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {:#?}", errors);
}

const SAMPLE_COMMANDS: &[&[&str]] = &[
    &["verify", "classical-identities"],
    &["derive", "qh2", "--max-degree", "3"],
    &["derive", "constraints"],
    &["verdict", "--casimir", "0"],
    &["verdict", "--casimir", "c"],
    &["check", "basis", "--r", "2", "--s", "7/3", "--levels", "10"],
    &["check", "basis", "--r", "2", "--s", "7/3", "--levels", "6"],
    &[
        "check",
        "recursion",
        "--s",
        "2",
        "--n-max",
        "31",
        "--alpha",
        "2/3",
        "--beta",
        "1",
        "--c",
        "-1/2",
    ],
    &["check", "confluence", "--trials", "60"],
    &[
        "build",
        "trivial-quantization",
        "--degree",
        "3",
        "--s",
        "7/3",
        "--levels",
        "10",
        "--pairs",
        "15",
    ],
];

#[test]
fn reports_validate_against_shipped_schema() {
    for args in SAMPLE_COMMANDS {
        let report = report_json(args);
        assert_valid_against_schema(&report);
    }
}

#[test]
fn text_and_json_formats_carry_the_same_checks() {
    for args in SAMPLE_COMMANDS {
        let mut argv = vec!["sl2q"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(&argv).unwrap();
        let report = execute(&cli);
        let text = report.to_text();
        let json: Value = serde_json::from_str(&report.to_json()).unwrap();
        let json_ids: Vec<&str> = json["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["id"].as_str().unwrap())
            .collect();
        let text_ids: Vec<&str> = text
            .lines()
            .filter(|line| {
                line.starts_with("pass") || line.starts_with("fail") || line.starts_with("skip")
            })
            .map(|line| line.split_whitespace().nth(1).unwrap())
            .collect();
        assert_eq!(json_ids, text_ids, "command {:?}", args);
    }
}

fn scrub_timings(report: &mut Value) {
    for check in report["checks"].as_array_mut().unwrap() {
        check["elapsed_ms"] = Value::from(0);
    }
}

#[test]
fn identical_arguments_give_identical_reports_modulo_timing() {
    for args in SAMPLE_COMMANDS {
        let mut first = report_json(args);
        let mut second = report_json(args);
        scrub_timings(&mut first);
        scrub_timings(&mut second);
        assert_eq!(first, second, "command {:?}", args);
    }
}

#[test]
fn truncation_guard_fails_the_report() {
    let report = report_json(&["check", "basis", "--r", "2", "--s", "7/3", "--levels", "6"]);
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["checks"][0]["status"], "fail");
}

fn run_binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sl2q"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes_follow_the_contract() {
    // Pass -> 0.
    let out = run_binary(&["verify", "classical-identities"]);
    assert_eq!(out.status.code(), Some(0));
    // The expected inconsistency verdict is a reproduction, hence 0.
    let out = run_binary(&["verdict", "--casimir", "c", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    // A failing check -> 1.
    let out = run_binary(&["check", "basis", "--r", "2", "--s", "7/3", "--levels", "6"]);
    assert_eq!(out.status.code(), Some(1));
    // Usage errors -> 2.
    let out = run_binary(&["verify", "classical-identities", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_binary(&["check", "basis", "--r", "2", "--s", "7/x", "--levels", "8"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_binary(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_parses_from_the_binary() {
    let out = run_binary(&["derive", "constraints", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_valid_against_schema(&report);
    assert_eq!(report["verdict"], "pass");
}

#[test]
fn rational_argument_parsing() {
    use sl2q_cli::commands::parse_rational_arg;
    assert!(parse_rational_arg("7/3").is_ok());
    assert!(parse_rational_arg("-5").is_ok());
    assert!(parse_rational_arg("-5/9").is_ok());
    assert!(parse_rational_arg("1/0").is_err());
    assert!(parse_rational_arg("x").is_err());
}

#[test]
fn emit_module_writes_sparse_triplets() {
    let dir = std::env::temp_dir().join(format!("sl2q-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("module.json");
    let out = run_binary(&[
        "build",
        "trivial-quantization",
        "--degree",
        "2",
        "--s",
        "2",
        "--levels",
        "4",
        "--pairs",
        "5",
        "--emit-module",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let payload: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(payload["levels"], 4);
    assert_eq!(payload["s"], "2");
    // H is diagonal with purely imaginary entries -i n.
    let h = payload["h"].as_array().unwrap();
    assert_eq!(h.len(), 4);
    assert_eq!(h[0]["im_num"], "-3");
    assert_eq!(h[0]["re_num"], "0");
    // The bottom ladder coefficient vanishes exactly, so E- carries one
    // fewer entry than the off-diagonal band.
    assert_eq!(payload["ep"].as_array().unwrap().len(), 3);
    assert_eq!(payload["em"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
