//! End-to-end tests of the binary: formats, exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metricdiv"))
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn two_point_csv() -> String {
    let d = 3f64.ln();
    format!("0,{d}\n{d},0\n")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_two_point_space() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let out = bin().args(["compute", "--input"]).arg(&input).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!((json["D"].as_f64().unwrap() - 1.5).abs() < 1e-9);
    assert!((json["kappa"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(json["support"].as_array().unwrap().len(), 2);
    assert_eq!(json["t"].as_f64().unwrap(), 1.0);
}

#[test]
fn compute_singleton_point_cloud() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "one.json",
        r#"{"points": [[0.0]], "metric": "euclidean"}"#,
    );
    let out = bin().args(["compute", "--input"]).arg(&input).output().unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(json["D"].as_f64().unwrap(), 1.0);
    assert_eq!(json["kappa"].as_f64().unwrap(), 0.0);
}

#[test]
fn compute_rejects_non_metric_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.csv", "0,1,3\n1,0,1\n3,1,0\n");
    let out = bin().args(["compute", "--input"]).arg(&input).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("triangle"), "stderr was: {err}");
    assert!(stdout_str(&out).is_empty());
}

#[test]
fn compute_missing_file_exit_2() {
    let out = bin()
        .args(["compute", "--input", "/does/not/exist.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_cap_env_var_gives_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let out = bin()
        .args(["compute", "--input"])
        .arg(&input)
        .env("METRICDIV_MAX_N", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    let out = bin()
        .args(["compute", "--input"])
        .arg(&input)
        .env("METRICDIV_MAX_N", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn profile_csv_has_header_and_monotone_diversity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let out = bin()
        .args([
            "profile", "--t-min", "0.5", "--t-max", "4.0", "--t-steps", "8", "--input",
        ])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,D,C,kappa"));
    let d: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(d.len(), 8);
    assert!(d.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn profile_single_scale_matches_compute() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let out = bin()
        .args(["profile", "--t", "1", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let row = text.lines().nth(1).unwrap();
    let d: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((d - 1.5).abs() < 1e-9);
}

#[test]
fn oracle_reports_small_spread() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let out = bin()
        .args(["oracle", "--input"])
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(json["max_spread"].as_f64().unwrap() <= 1e-8);
    assert_eq!(json["entries"].as_array().unwrap().len(), 5);
    for entry in json["entries"].as_array().unwrap() {
        assert!(entry["abs_error"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn verify_default_suite_passes_with_reduced_trials() {
    let out = bin()
        .args(["verify", "--trials", "5", "--seed", "11"])
        .output()
        .unwrap();
    assert!(out.status.success(), "default suite must pass");
    let reports: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    for r in reports {
        assert_eq!(
            r["violations"].as_array().unwrap().len(),
            0,
            "check {} reported violations",
            r["check_name"]
        );
    }
}

#[test]
fn verify_csv_format_summarizes_reports() {
    let out = bin()
        .args([
            "verify",
            "--checks",
            "cardinality_limit",
            "--trials",
            "5",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check_name,trials,violations,worst_slack,seed")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("cardinality_limit,5,0,"));
}

#[test]
fn verify_unknown_check_exit_2() {
    let out = bin()
        .args(["verify", "--checks", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_selftest_fails_with_shrunk_counterexample() {
    let out = bin()
        .args(["verify", "--checks", "selftest_violation", "--trials", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let reports: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let violations = reports[0]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    // The witness shrinks to a tiny ambient space.
    let instance: serde_json::Value =
        serde_json::from_str(violations[0]["instance"].as_str().unwrap()).unwrap();
    assert!(instance["dist"].as_array().unwrap().len() <= 2);
}

#[test]
fn explore_submodularity_never_fails_the_run() {
    let out = bin()
        .args([
            "verify",
            "--checks",
            "explore_submodularity",
            "--trials",
            "10",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let reports: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(reports[0]["notes"]
        .as_str()
        .unwrap()
        .contains("submodularity survey"));
}

#[test]
fn identical_configs_give_byte_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());

    let run = |args: &[&str], path: &Path| -> Vec<u8> {
        let out = bin().args(args).arg(path).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    for args in [
        vec!["compute", "--t", "1.3", "--input"],
        vec!["profile", "--t-min", "0.5", "--t-max", "2.0", "--t-steps", "5", "--input"],
        vec!["oracle", "--seed", "9", "--input"],
    ] {
        assert_eq!(run(&args, &input), run(&args, &input));
    }

    let verify = |seed: &str| -> Vec<u8> {
        let out = bin()
            .args(["verify", "--trials", "4", "--seed", seed])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(verify("3"), verify("3"));
}

#[test]
fn output_flag_writes_file_and_keeps_stdout_clean() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "two.csv", &two_point_csv());
    let target = dir.path().join("result.json");
    let out = bin()
        .args(["compute", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&target)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_str(&out).is_empty());
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!((json["D"].as_f64().unwrap() - 1.5).abs() < 1e-9);
}
