//! The `majorlab` binary: exit codes, listing and written reports.

use std::fs;
use std::process::{Command, Output};

fn majorlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majorlab"))
        .args(args)
        .env_remove("MAJORLAB_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn passing_check_exits_zero_with_json() {
    let out = majorlab(&["--check", "araki", "--dim", "2,3", "--trials", "6", "--seed", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outcomes"].as_array().unwrap().len(), 6);
    assert_eq!(report["summary"]["false_verdicts"], 0);
}

#[test]
fn counterexample_exits_two_and_is_labelled() {
    let out = majorlab(&["--check", "det_schur_counterexample", "--dim", "2", "--trials", "2", "--seed", "1"]);
    assert_eq!(code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for o in report["outcomes"].as_array().unwrap() {
        assert_eq!(o["status"], "expected-counterexample");
        assert!(o["witness"].is_object());
    }
    assert_eq!(report["summary"]["unexpected"], 0);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["--check", "no_such_check"][..],
        &["--suite", "no_such_suite"],
        &["--bogus-flag"],
        &["--suite", "all", "--check", "araki"],
        &["--check", "araki", "--dim", "40"],
        &["--probe", "--norm", "kyfan:0", "--dim", "3"],
        &["--probe", "--variant", "sideways"],
        &["--objective", "nope"],
        &["--check", "araki", "--tol", "-1"],
        &["--config", "/nonexistent/config.json"],
    ] {
        let out = majorlab(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = majorlab(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("--suite"));
}

#[test]
fn list_shows_every_check_and_suite() {
    let out = majorlab(&["--list"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["araki", "golden_thompson", "det_schur_counterexample", "poslin_probe", "counterexamples", "lie_trotter_z"] {
        assert!(text.lines().any(|l| l.split_whitespace().next() == Some(id)), "{id}");
    }
}

#[test]
fn written_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json").display().to_string();
    let mut runs = Vec::new();
    for _ in 0..2 {
        let out = majorlab(&["--suite", "exponential", "--dim", "2,3", "--trials", "3", "--seed", "8", "--out", &path]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
        runs.push(fs::read(&path).unwrap());
        fs::remove_file(&path).unwrap();
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(&path, r#"{"command":"suite","check":"striking","trials":2,"dims":[2],"seed":3}"#).unwrap();
    let p = path.display().to_string();
    let out = majorlab(&["--config", &p, "--trials", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().skip(1).all(|l| l.contains(",striking,")));
}

#[test]
fn seed_comes_from_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_majorlab"))
            .args(["--check", "araki", "--trials", "2", "--format", "csv"])
            .env("MAJORLAB_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn probe_demo_and_search_modes() {
    let out = majorlab(&["--probe", "--dim", "2,3", "--trials", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let out = majorlab(&["--probe", "--dim", "3", "--trials", "6", "--variant", "fixed:1"]);
    assert_eq!(code(&out), 2);
    let out = majorlab(&["--demo"]);
    assert_eq!(code(&out), 0);
    let out = majorlab(&["--objective", "det_schur", "--dim", "2", "--restarts", "2", "--steps", "20"]);
    assert_eq!(code(&out), 2);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["searches"][0]["found_violation"], true);
}
