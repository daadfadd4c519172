//! End-to-end checks of the command-line surface: subcommands, flags,
//! report files, and exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jumpcode"))
}

#[test]
fn certify_passes_with_exit_zero() {
    let out = bin().arg("certify").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["spec"]["name"], "certify");
}

#[test]
fn bound_reports_minimal_width_five() {
    let out = bin().args(["bound", "--l", "1", "--t", "1", "--n-max", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["summary"]["minimal_n"], 5);
}

#[test]
fn missing_seed_is_a_usage_error() {
    let out = bin().arg("invariance").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariance_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let csv_path = dir.path().join("cases.csv");
    let out = bin()
        .args([
            "invariance",
            "--seed",
            "5",
            "--states",
            "5",
            "--gamma-t",
            "0.1",
            "--gamma-t",
            "5",
        ])
        .arg("--out")
        .arg(&report_path)
        .arg("--csv")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["spec"]["seed"], 5);
    assert_eq!(report["results"]["cases"].as_array().unwrap().len(), 2);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.lines().next().unwrap().contains("min_fidelity"));
}

#[test]
fn search_width_six_is_empty_and_passes() {
    let out = bin().args(["search", "--n", "6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["summary"]["found"], 0);
}

#[test]
fn exhausted_search_budget_exits_inconclusive() {
    let out = bin()
        .args(["search", "--n", "8", "--budget-subspaces", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corrupted_limit_run_reports_overlap() {
    let out = bin()
        .args(["eq6-limit", "--gamma-t", "20"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let best = report["results"]["summary"]["best_overlap"].as_f64().unwrap();
    assert!(best > 1.0 - 1e-9);
}

#[test]
fn reports_reproduce_given_identical_spec_and_seed() {
    let run = || {
        let out = bin()
            .args(["decay-mixing", "--seed", "42", "--states", "4", "--gamma-t", "0.7"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        serde_json::to_string(&report["results"]).unwrap()
    };
    assert_eq!(run(), run());
}
