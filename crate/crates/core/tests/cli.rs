use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use g3m::report::parse_scaling_csv;
use tempfile::TempDir;

fn g3m(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g3m"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, mean: &str) -> PathBuf {
    let path = dir.join(name);
    let doc = format!(r#"{{"reserves": [4, 4], "weights": [0.5, 0.5], "mean": {mean}}}"#);
    std::fs::write(&path, doc).unwrap();
    path
}

/// Value printed after `label` on its own line.
fn field(text: &str, label: &str) -> f64 {
    let line = text
        .lines()
        .find(|l| l.starts_with(label))
        .unwrap_or_else(|| panic!("no {label:?} in {text}"));
    line[label.len()..].trim().parse().unwrap()
}

#[test]
fn quote_power_pool() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.json", r#"{"type": "power", "p": 0.5}"#);
    let out = g3m(&["quote", cfg.to_str().unwrap(), "--in", "1=5", "--out", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "amount out (asset 2):") - 3.0).abs() < 1e-12, "{text}");
    assert!((field(&text, "slippage:") - 2.0 / 3.0).abs() < 1e-12, "{text}");
}

#[test]
fn quote_geometric_pool() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "g.json", r#"{"type": "geometric"}"#);
    let out = g3m(&["quote", cfg.to_str().unwrap(), "--in", "1=4", "--out", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "amount out (asset 2):") - 2.0).abs() < 1e-12, "{text}");
    assert!((field(&text, "slippage:") - 1.0).abs() < 1e-12, "{text}");
}

#[test]
fn quote_beyond_constant_sum_liquidity_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "s.json", r#"{"type": "power", "p": 1}"#);
    let out = g3m(&["quote", cfg.to_str().unwrap(), "--in", "1=13", "--out", "2"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("infeasible"), "{}", stderr(&out));
}

#[test]
fn quote_rejects_bad_arguments() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.json", r#"{"type": "power", "p": 0.5}"#);
    let cfg = cfg.to_str().unwrap();
    for args in [
        vec!["quote", cfg, "--in", "3=1", "--out", "2"],
        vec!["quote", cfg, "--in", "1=-1", "--out", "2"],
        vec!["quote", cfg, "--in", "1", "--out", "2"],
        vec!["quote", "/nonexistent/pool.json", "--in", "1=1", "--out", "2"],
        vec!["quote", cfg, "--in", "1=1"],
    ] {
        let out = g3m(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).contains("panicked"));
    }
}

#[test]
fn slippage_solves_the_input() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.json", r#"{"type": "power", "p": 0.5}"#);
    let out = g3m(&["slippage", cfg.to_str().unwrap(), "--out", "2=3", "--in", "1"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "amount in (asset 1):") - 5.0).abs() < 1e-12, "{text}");
    assert!((field(&text, "slippage:") - 2.0 / 3.0).abs() < 1e-12, "{text}");
}

#[test]
fn schedule_defaults() {
    let out = g3m(&["schedule", "--C", "4", "--s", "1.333333333333", "--eps", "0.00390625"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "p:") - 0.1).abs() < 1e-9, "{text}");
    assert!((field(&text, "c:") - 0.584963).abs() < 1e-6, "{text}");
    assert!(field(&text, "identity residual:").abs() < 1e-9, "{text}");
}

#[test]
fn schedule_constraint_violations_exit_2() {
    let out = g3m(&["schedule", "--C", "4", "--s", "2.5", "--eps", "0.1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("requires 1 < s < C/2"), "{}", stderr(&out));
    let out = g3m(&["schedule", "--C", "1.5", "--s", "1.2", "--eps", "0.1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("C"), "{}", stderr(&out));
    let out = g3m(&["schedule", "--C", "4", "--s", "1.5", "--eps", "1.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_small_run_passes() {
    let out = g3m(&["verify", "--seed", "42", "--cases", "200"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("all 21 properties passed"), "{}", stdout(&out));
}

#[test]
fn verify_with_config_pool() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "g.json", r#"{"type": "fmean", "f": "log"}"#);
    let out = g3m(&["verify", "--cases", "100", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("all 23 properties passed"), "{}", stdout(&out));
}

#[test]
fn verify_rejects_zero_cases_and_invalid_pools() {
    assert_eq!(code(&g3m(&["verify", "--cases", "0"])), 2);
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "bad.json", r#"{"type": "power", "p": 1.5}"#);
    let out = g3m(&["verify", "--cases", "10", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("0 < p <= 1"), "{}", stderr(&out));
}

#[test]
fn experiment_defaults_write_deterministic_csv() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let out = g3m(&["experiment", "--out", a.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!((field(&text, "c_target:") - 0.584963).abs() < 1e-6, "{text}");
    assert_eq!(code(&g3m(&["experiment", "--out", b.to_str().unwrap()])), 0);
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let csv = String::from_utf8(bytes).unwrap();
    assert!(csv.starts_with("eps,p,delta1,S_p,S_0,identity_residual\n"));
    let rows = parse_scaling_csv(&csv).unwrap();
    assert_eq!(rows.len(), 37);
    assert_eq!(rows[4].eps, 2f64.powi(-8));
    assert!((rows[4].p - 0.1).abs() < 1e-15);
}

#[test]
fn experiment_config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("x.csv");
    let path = path.to_str().unwrap();
    let out = g3m(&["experiment", "--kmin", "4", "--kmax", "5", "--out", path]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    let out = g3m(&["experiment", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    assert_eq!(code(&g3m(&["experiment"])), 2);
    assert_eq!(code(&g3m(&["experiment", "--tail", "0", "--out", path])), 2);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&g3m(&["frobnicate"])), 2);
    assert_eq!(code(&g3m(&["--help"])), 0);
}
