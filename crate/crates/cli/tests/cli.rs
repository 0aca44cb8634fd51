use std::path::Path;
use std::process::Output;

use clap::Parser;
use hkeq_cli::{
    canonical_json, run, Command, OutputFormat, RunConfig, EXIT_MALFORMED, EXIT_PASS, EXIT_VIOLATION,
};
use serde_json::Value;

const KOSZUL3: &str = r#"{"variables": 3, "terms": [[3], [2, 2, 2], [1, 1, 1], [0]]}"#;

fn hkeq(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_hkeq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn check(contents: &str, format: OutputFormat) -> hkeq_cli::Outcome {
    let config = RunConfig::new(Command::Check {
        input: "in.json".into(),
    })
    .with_format(format);
    run(&config, contents)
}

#[test]
fn check_exit_codes() {
    let pass = check(KOSZUL3, OutputFormat::Text);
    assert_eq!(pass.exit_code, EXIT_PASS);
    for i in 0..=2 {
        assert!(pass.stdout.contains(&format!("i={i}:")), "{}", pass.stdout);
    }
    assert!(!pass.stdout.contains("i=3:"));

    let fail = check(r#"{"variables": 2, "terms": [[1], [0]]}"#, OutputFormat::Text);
    assert_eq!(fail.exit_code, EXIT_VIOLATION);
    assert!(fail.stdout.contains("i=1: 0 != 1  VIOLATED"), "{}", fail.stdout);

    let infeasible = check(r#"{"variables": 2, "terms": [[1, 1], [0]]}"#, OutputFormat::Json);
    assert_eq!(infeasible.exit_code, EXIT_MALFORMED);
    let report: Value = serde_json::from_str(&infeasible.stdout).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert!(report["infeasible"]
        .as_str()
        .unwrap()
        .contains("infeasible ranks"));

    let malformed = check("{\"variables\": 2,\n \"terms\": [[1], [0]", OutputFormat::Text);
    assert_eq!(malformed.exit_code, EXIT_MALFORMED);
    assert!(malformed.stderr.contains("line 2"), "{}", malformed.stderr);
}

#[test]
fn json_reports_round_trip_byte_for_byte() {
    let inputs = [
        KOSZUL3,
        r#"{"variables": 2, "terms": [[1], [0]]}"#,
        r#"{"variables": 5, "terms": [[9, 9, 9], [8, 8, 8, 8, 8], [1, 1]]}"#,
    ];
    for text in inputs {
        let out = check(text, OutputFormat::Json).stdout;
        let value: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(canonical_json(&value), out);
        assert!(!out.contains('.'), "floats in {out}");
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("k4.json");
    let fixture = fixture.to_str().unwrap();
    assert!(hkeq(&["koszul", "-m", "4", "-o", fixture]).status.success());
    let first = hkeq(&[
        "verify", fixture, "--format", "json", "--seed", "11", "--points", "5",
    ]);
    let second = hkeq(&[
        "verify", fixture, "--format", "json", "--seed", "11", "--points", "5",
    ]);
    assert_eq!(first.status.code(), Some(EXIT_PASS));
    assert_eq!(first.stdout, second.stdout);
    let other_seed = hkeq(&[
        "verify", fixture, "--format", "json", "--seed", "12", "--points", "5",
    ]);
    assert_ne!(first.stdout, other_seed.stdout);
}

#[test]
fn unknown_flags_are_rejected() {
    assert!(RunConfig::try_parse_from(["hkeq", "check", "x.json", "--strict"]).is_err());
    assert!(RunConfig::try_parse_from(["hkeq", "primes", "--poly", "1,0,1", "--mod", "3"]).is_err());
    let out = hkeq(&["check", "x.json", "--strict"]);
    assert_eq!(out.status.code(), Some(EXIT_MALFORMED));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--strict"));
}

#[test]
fn flags_parse_as_documented() {
    let config = RunConfig::try_parse_from([
        "hkeq",
        "differentials",
        "--space",
        "gl-leftright",
        "--u",
        "-1,2",
        "--v",
        "0,3",
    ])
    .unwrap();
    assert_eq!(
        config.command,
        Command::Differentials {
            space: hkeq_cli::Space::GlLeftRight,
            u: vec![-1, 2],
            v: vec![0, 3],
            variables: None,
        }
    );
    let config = RunConfig::try_parse_from(["hkeq", "verify", "c.json"]).unwrap();
    assert_eq!((config.seed, config.points), (7, 20));
    assert_eq!(config.orientation, hkeq_cli::OrientationArg::Both);
}

#[test]
fn binary_subcommands() {
    let dir = tempfile::tempdir().unwrap();

    let out = hkeq(&["primes", "--poly", "1,0,1", "--bound", "100", "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        value["primes"],
        serde_json::json!([5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97])
    );
    assert_eq!(
        hkeq(&["primes", "--poly", "2,0,1"]).status.code(),
        Some(EXIT_MALFORMED)
    );

    let out = hkeq(&[
        "differentials",
        "--space",
        "stiefel",
        "--u",
        "2,2,2",
        "--v",
        "3",
        "--variables",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_VIOLATION));
    assert!(String::from_utf8_lossy(&out.stdout).contains("first nonzero: k=3, C=-1"));
    let out = hkeq(&["differentials", "--space", "gl-left", "--u", "1,2"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("d_4(a2) = 2*theta^2 mod (3)"));
    let out = hkeq(&[
        "differentials",
        "--space",
        "gl-leftright",
        "--u",
        "1,2",
        "--v",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(EXIT_MALFORMED));

    let six_term = write(
        dir.path(),
        "six_term.json",
        r#"{"terms": [[0], [0,0,0,0], [0,0,0,0,0], [0,0,0,0], [0,0,0], [0]]}"#,
    );
    let out = hkeq(&["cohomology", &six_term, "--format", "json"]);
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["generator_count"], 9);
    assert_eq!(value["cohomology_rank"], 512);
    assert_eq!(value["generators"][0]["support"], serde_json::json!([1, 6]));

    let out = hkeq(&["fold", &six_term, "--times", "2"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&out.stdout).contains("k1,4 -> k2,4 + k3,4"));
    // padding keeps the length even, so folding with an empty third term is allowed
    assert_eq!(
        hkeq(&["fold", &six_term, "--times", "5"]).status.code(),
        Some(EXIT_PASS)
    );
    let iso = write(dir.path(), "iso.json", r#"{"terms": [[1], [2]]}"#);
    assert_eq!(hkeq(&["fold", &iso]).status.code(), Some(EXIT_MALFORMED));

    assert_eq!(
        hkeq(&["check", "/nonexistent/file.json"]).status.code(),
        Some(EXIT_MALFORMED)
    );
}

#[test]
fn verify_flags_broken_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    // x2 replaced by 1: not homogeneous
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"variables": 2, "shifts": [[2], [1, 1], [0]], "matrices": [[["1"], ["-x1"]], [["x1", "x2"]]]}"#,
    );
    let out = hkeq(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(EXIT_VIOLATION));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not homogeneous"));

    // the zero map S(-1) -> S passes the degree checks but is nowhere exact
    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"variables": 1, "shifts": [[1], [0]], "matrices": [[["0"]]]}"#,
    );
    let out = hkeq(&["verify", &zero, "--points", "3"]);
    assert_eq!(out.status.code(), Some(EXIT_VIOLATION));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("exact at 0 of 3 points") && stdout.contains("verdict: pass"),
        "{stdout}"
    );

    // a lone free module has infeasible ranks
    let lonely = write(
        dir.path(),
        "lonely.json",
        r#"{"variables": 1, "shifts": [[0], []], "matrices": [[]]}"#,
    );
    assert_eq!(hkeq(&["verify", &lonely]).status.code(), Some(EXIT_MALFORMED));

    let broken = write(
        dir.path(),
        "broken.json",
        r#"{"variables": 1, "shifts": [[1], [0]], "matrices": [[["x1 x2"]]]}"#,
    );
    let out = hkeq(&["verify", &broken]);
    assert_eq!(out.status.code(), Some(EXIT_MALFORMED));
    assert!(String::from_utf8_lossy(&out.stderr).contains("entry (0,0): parse error at column"));
}
