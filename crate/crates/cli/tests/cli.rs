use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use trunc_bose::{Dim, Role, TruncatedOperator};
use trunc_bose_cli::parse_csv_matrix;

fn tool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trunc-bose"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/output.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = tool(&full);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn every_json_output_validates() {
    let schema = schema();
    let runs: &[&[&str]] = &[
        &["build", "B", "4"],
        &["build", "bdag", "3"],
        &["lie-check", "--dims", "2,3,4,5"],
        &["spectrum", "6"],
        &["spectrum", "5", "--vectors"],
        &["expect", "number:3", "N", "8"],
        &["expect", "coherent:1,1", "C", "64"],
        &["expect", "squeezed:0.5,0", "N", "128"],
        &["scaling", "gap", "16", "128", "5"],
        &["scaling", "lambda-max", "16", "256", "6"],
    ];
    for args in runs {
        let doc = json_of(args);
        if let Err(errs) = schema.validate(&doc) {
            let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
            panic!("{args:?} does not validate: {msgs:?}");
        }
        assert_eq!(doc["manifest"]["timestamp"], "2023-11-14T22:13:20Z");
        assert_eq!(doc["manifest"]["command"], args[0]);
    }
}

#[test]
fn failing_lie_check_still_validates() {
    let o = tool(&["lie-check", "--inject-sign-flip", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(schema().is_valid(&doc));
    assert_eq!(doc["pass"], false);
    assert!(String::from_utf8_lossy(&o.stderr).contains("heisenberg"));
}

#[test]
fn schema_rejects_malformed_documents() {
    let schema = schema();
    let mut doc = json_of(&["build", "N", "3"]);
    doc["role"] = Value::from("X");
    assert!(!schema.is_valid(&doc));
    let mut doc = json_of(&["spectrum", "3"]);
    doc.as_object_mut().unwrap().remove("manifest");
    assert!(!schema.is_valid(&doc));
}

#[test]
fn build_csv_examples() {
    assert_eq!(stdout(&tool(&["build", "B", "2", "--format", "csv"])), "0,1\n1,0\n");
    assert_eq!(stdout(&tool(&["build", "C", "2", "--format", "csv"])), "0,-1\n1,0\n");
    assert_eq!(stdout(&tool(&["build", "N", "3", "--format", "csv"])), "0,0,0\n0,1,0\n0,0,2\n");
}

#[test]
fn csv_roundtrip_is_bit_identical() {
    for role in [Role::Lowering, Role::Raising, Role::Number, Role::Position, Role::MomentumLike, Role::Identity] {
        for n in [2, 3, 7, 33] {
            let o = tool(&["build", role.symbol(), &n.to_string(), "--format", "csv"]);
            let parsed = parse_csv_matrix(&stdout(&o)).unwrap();
            let direct = TruncatedOperator::build(role, Dim::new(n).unwrap());
            let a: Vec<u64> = parsed.as_slice().iter().map(|x| x.to_bits()).collect();
            let b: Vec<u64> = direct.entries().as_slice().iter().map(|x| (x + 0.0).to_bits()).collect();
            assert_eq!(a, b, "{} n={n}", role.symbol());
        }
    }
}

#[test]
fn spectrum_csv_has_shortest_floats() {
    let text = stdout(&tool(&["spectrum", "3", "--format", "csv"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,eigenvalue");
    assert_eq!(lines.len(), 4);
    let mid: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!(mid.abs() < 1e-12);
    for l in &lines[1..] {
        let v: f64 = l.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(format!("{v}"), l.split(',').nth(1).unwrap());
    }
}

#[test]
fn spectrum_json_matches_printed_values() {
    let doc = json_of(&["spectrum", "6"]);
    let ev: Vec<f64> = doc["eigenvalues"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    for (got, want) in ev.iter().zip(trunc_bose::spectral::PRINTED_N6) {
        assert!((got - want).abs() < 1e-10);
    }
    assert!(doc.get("eigenvectors").is_none());
    let doc = json_of(&["spectrum", "3", "--vectors"]);
    assert_eq!(doc["eigenvectors"].as_array().unwrap().len(), 3);
}

#[test]
fn expect_examples() {
    let doc = json_of(&["expect", "number:3", "N", "8"]);
    assert_eq!(doc["value"]["re"], 3.0);
    assert_eq!(doc["deviation"], 0.0);
    let doc = json_of(&["expect", "coherent:1,0", "B", "64"]);
    assert!((doc["value"]["re"].as_f64().unwrap() - 2.0).abs() < 1e-8);
    assert_eq!(doc["reference"]["re"], 2.0);
    let doc = json_of(&["expect", "squeezed:0.5,0", "N", "128"]);
    let want = 0.5f64.sinh().powi(2);
    assert!((doc["value"]["re"].as_f64().unwrap() - want).abs() < 1e-6);
    let table = stdout(&tool(&["expect", "squeezed:0.5,0", "N", "128"]));
    assert!(table.contains("reference  0.2715"), "{table}");
}

#[test]
fn scaling_gap_default_grid() {
    let doc = json_of(&["scaling", "gap", "64", "4096", "10"]);
    let e = doc["fit"]["exponent"].as_f64().unwrap();
    assert!((-0.21..=-0.15).contains(&e), "{e}");
    assert_eq!(doc["samples"].as_array().unwrap().len(), 10);
    let csv = stdout(&tool(&["scaling", "gap", "64", "4096", "10", "--format", "csv"]));
    assert!(csv.starts_with("n,value\n64,"));
    assert!(csv.contains("\nexponent,prefactor,rms_residual,n_min,n_max\n"));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["build", "B", "4"], 0),
        (&["lie-check"], 0),
        (&["lie-check", "--inject-sign-flip"], 1),
        (&["build", "X", "4"], 2),
        (&["build", "B", "1"], 2),
        (&["build", "B", "-3"], 2),
        (&["spectrum", "1"], 2),
        (&["spectrum", "100001"], 2),
        (&["spectrum", "600", "--vectors"], 2),
        (&["spectrum", "4", "--tol", "-1"], 2),
        (&["expect", "number:9", "N", "8"], 2),
        (&["expect", "wobbly:1", "N", "8"], 2),
        (&["expect", "coherent:1", "N", "8"], 2),
        (&["expect", "squeezed:2,0", "N", "8"], 2),
        (&["scaling", "gap", "64", "64", "1"], 2),
        (&["scaling", "gap", "8", "64", "5"], 2),
        (&["scaling", "gap", "16", "200000", "5"], 2),
        (&["scaling", "sideways", "16", "64", "5"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
    ];
    for (args, code) in cases {
        let o = tool(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        if *code == 2 {
            assert!(o.stdout.is_empty(), "{args:?}");
            assert!(!o.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_trunc-bose"))
            .args(["scaling", "lambda-max", "16", "512", "6", "--format", "csv"])
            .env("TRUNC_BOSE_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = run("zero");
    assert_eq!(bad.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("TRUNC_BOSE_THREADS"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(tool(&["--help"]).status.code(), Some(0));
    let v = tool(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains(env!("CARGO_PKG_VERSION")));
}
