use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use heatconv::cli::RunConfig;
use heatconv::verification::Tolerances;

fn heatconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heatconv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_config(dir: &Path, config: &RunConfig) -> String {
    let path = dir.join("config.json");
    fs::write(&path, config.to_json()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn small_config(out: &Path) -> RunConfig {
    let keep = ["psi", "lambda_reverse", "phi_equality", "young_forward"];
    let mut config = RunConfig::default();
    config.suites.retain(|s| keep.contains(&s.name.as_str()));
    config.output_dir = out.to_path_buf();
    config
}

#[test]
fn constants_table_rows() {
    let out = heatconv(&["constants", "2", "4", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[2].contains("1.0675923981"));
    assert!(rows[3].contains("degenerate"));
    assert_ne!(code(&heatconv(&["constants", "0"])), 0);
    assert_ne!(code(&heatconv(&["constants", "--", "-2"])), 0);
}

#[test]
fn psi_trace_has_25_rows_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &small_config(dir.path()));
    let read = |sub: &str| {
        let out = dir.path().join(sub);
        let run = heatconv(&["trace", "--config", &config, "--suite", "psi", "--out", out.to_str().unwrap()]);
        assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
        fs::read(out.join("psi_trace.csv")).unwrap()
    };
    let (a, b) = (read("a"), read("b"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value,analytic_limit"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
    assert!(rows.iter().all(|r| r.len() == 3 && r[2] == rows[0][2]));
}

#[test]
fn seed_changes_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &small_config(dir.path()));
    let read = |seed: &str| {
        let out = dir.path().join(seed);
        let run = heatconv(&["trace", "--config", &config, "--suite", "psi", "--seed", seed, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&run), 0);
        fs::read(out.join("psi_trace.csv")).unwrap()
    };
    assert_ne!(read("1"), read("2"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &small_config(dir.path()));
    let out = heatconv(&["trace", "--config", &config, "--suite", "nope"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = small_config(dir.path());
    let path = write_config(dir.path(), &config);
    let out = heatconv(&["verify", "--config", &path]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let suites = report["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 4);
    for key in ["suite", "passed", "direction", "max_violation", "limit_gap", "details"] {
        assert!(suites[0].get(key).is_some(), "missing {key}");
    }

    config.tolerances = Tolerances::uniform(1e-15);
    let path = write_config(dir.path(), &config);
    assert_eq!(code(&heatconv(&["verify", "--config", &path])), 1);

    fs::write(dir.path().join("bad.json"), "{\"grid\": 3").unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(code(&heatconv(&["verify", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&heatconv(&["verify", "--config", "/nonexistent/config.json"])), 2);
    assert_eq!(code(&heatconv(&["verify", "--frobnicate"])), 2);
}

#[test]
fn invalid_exponents_in_config_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path());
    let text = config.to_json().replacen("1.5", "1.7", 1);
    let path = dir.path().join("c.json");
    fs::write(&path, text).unwrap();
    assert_eq!(code(&heatconv(&["verify", "--config", path.to_str().unwrap()])), 2);
}

#[test]
fn report_numbers_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let config = small_config(dir.path());
    let path = write_config(dir.path(), &config);
    assert_eq!(code(&heatconv(&["verify", "--config", &path, "--suite", "psi"])), 0);
    let text = fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report: heatconv::cli::RunReport = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap();
    assert_eq!(again.trim_end(), text.trim_end());
}

#[test]
fn default_config_command_round_trips() {
    let out = heatconv(&["default-config"]);
    assert_eq!(code(&out), 0);
    let printed = RunConfig::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(printed, RunConfig::default());
}
