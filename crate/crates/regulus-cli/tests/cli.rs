//! End-to-end checks of the binary: exit codes, JSON reports, certificate
//! sidecars, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_regulus")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin()).args(args).env(key, value).output().expect("binary runs")
}

fn workspace_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn validate_is_positive_on_the_bundled_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "shapes.cat", regulus::corpus::SHAPES_CAT);
    let out = run(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn validate_rejects_garbage_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "bad.cat", "category { nope");
    let out = run(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_errors_exit_3() {
    let out = run(&["closure"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn closure_writes_a_reusable_certificate_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "coeq.cat", regulus::corpus::COEQUALIZER_CAT);
    let cert = dir.path().join("coeq.cert.json");
    let out = run(&[
        "closure",
        file.to_str().unwrap(),
        "--category",
        "C",
        "--class",
        "F",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(cert.exists(), "sidecar must be written");
    // the sidecar re-evaluates through eval-recipe
    let out = run(&[
        "eval-recipe",
        file.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
        "--category",
        "C",
        "--class",
        "F",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("terminal"));
}

#[test]
fn negative_verdicts_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "shapes.cat", regulus::corpus::SHAPES_CAT);
    // the inclusion of the source object of a parallel pair is not cofinal
    let out = run(&["check-sifted", file.to_str().unwrap(), "--category", "Disc2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check-contractible", file.to_str().unwrap(), "--category", "ParallelPair"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_bounds_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "coeq.cat", regulus::corpus::COEQUALIZER_CAT);
    let out = run(&[
        "closure",
        file.to_str().unwrap(),
        "--category",
        "C",
        "--class",
        "F",
        "--max-stage",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_env(
        &["closure", file.to_str().unwrap(), "--category", "C", "--class", "F"],
        "REGULUS_MAX_DIAGRAMS",
        "1",
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = workspace_file(dir.path(), "shapes.cat", regulus::corpus::SHAPES_CAT);
    let args = [
        "check-cofinal",
        file.to_str().unwrap(),
        "--functor",
        "includeTop",
        "--json",
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "check-cofinal");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "identical invocations must be byte-identical");
}

#[test]
fn corpus_passes_with_and_without_parallelism() {
    for args in [vec!["corpus"], vec!["corpus", "--jobs", "2"]] {
        let out = run(&args.iter().map(|s| *s).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let text = stdout(&out);
        assert!(text.contains("ok"), "corpus output: {text}");
    }
}
