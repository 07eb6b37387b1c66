//! End-to-end tests of the `hyperbell` binary: flag handling, exit codes,
//! artifact formats, and determinism of emitted files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut command = Command::new(env!("CARGO_BIN_EXE_hyperbell"));
    command.env_remove("HYPERBELL_SEED");
    command
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout is JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("hyperbell-cli-{}-{name}", std::process::id()))
}

#[test]
fn analytic_simulate_classifies_and_reports_the_quartet() {
    let output = run(&[
        "simulate",
        "--experiment",
        "pol-bsm",
        "--state",
        "Psi+:psi+",
        "--engine",
        "analytic",
    ]);
    assert_eq!(exit_code(&output), 0);
    let document = json_of(&output);
    assert_eq!(document["classification"]["label"], "Psi+");
    assert_eq!(document["expected"], "Psi+");
    assert_eq!(document["metadata"]["engine"], "analytic");
    let joint = document["table"]["joint"].as_array().unwrap();
    assert_eq!(joint.len(), 16);
    let bright: Vec<&serde_json::Value> = joint
        .iter()
        .filter(|e| e["p"].as_f64().unwrap() > 1e-6)
        .collect();
    assert_eq!(bright.len(), 4);
    for entry in bright {
        assert!((entry["p"].as_f64().unwrap() - 0.01).abs() < 1e-12);
    }
}

#[test]
fn bad_state_selector_is_a_config_error() {
    let output = run(&["simulate", "--experiment", "pol-bsm", "--state", "Bogus"]);
    assert_eq!(exit_code(&output), 2);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(
        stderr.contains("error"),
        "no diagnostic on stderr: {stderr}"
    );
}

#[test]
fn inadmissible_ancilla_needs_the_override_flag() {
    let output = run(&[
        "simulate",
        "--experiment",
        "pol-bsm",
        "--state",
        "Psi+:phi+",
    ]);
    assert_eq!(exit_code(&output), 2);
    let output = run(&[
        "simulate",
        "--experiment",
        "pol-bsm",
        "--state",
        "Psi+:phi+",
        "--override-ancilla",
    ]);
    assert_eq!(exit_code(&output), 0);
    // With the momentum ancilla forced into phi+, the polarization analyzer
    // misreads the state.
    assert_eq!(json_of(&output)["classification"]["label"], "Phi-");
}

#[test]
fn expectation_flag_gates_the_exit_code() {
    let args = [
        "simulate",
        "--experiment",
        "mom-bsm",
        "--state",
        "Psi+:phi-",
    ];
    let output = run(&[&args[..], &["--expect", "phi-"]].concat());
    assert_eq!(exit_code(&output), 0);
    let output = run(&[&args[..], &["--expect", "phi+"]].concat());
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn monte_carlo_artifacts_are_byte_identical_across_runs() {
    let args = [
        "simulate",
        "--experiment",
        "pol-bsm",
        "--state",
        "Phi-:psi+",
        "--engine",
        "montecarlo",
        "--samples",
        "5000",
        "--seed",
        "11",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(
        first.stdout, second.stdout,
        "identical runs emitted different bytes"
    );
}

#[test]
fn csv_and_json_artifacts_carry_the_same_numbers() {
    let args = [
        "simulate",
        "--experiment",
        "mom-bsm",
        "--state",
        "Psi+:psi-",
    ];
    let json = json_of(&run(&[&args[..], &["--format", "json"]].concat()));
    let csv_output = run(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(exit_code(&csv_output), 0);
    let csv = stdout_of(&csv_output);
    let mut rows = csv.lines();
    assert_eq!(rows.next().unwrap(), "detector_i,detector_j,p,stderr");
    let joint = json["table"]["joint"].as_array().unwrap();
    for entry in joint {
        let row = rows.next().expect("CSV ends before JSON");
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[0], entry["detector_i"].as_str().unwrap());
        assert_eq!(fields[1], entry["detector_j"].as_str().unwrap());
        let p_csv: f64 = fields[2].parse().unwrap();
        assert_eq!(p_csv.to_bits(), entry["p"].as_f64().unwrap().to_bits());
        // Exact tables leave the stderr field empty.
        assert_eq!(fields[3], "");
    }
    assert!(rows.next().is_none());
}

#[test]
fn seed_falls_back_to_the_environment_variable() {
    let args = [
        "simulate",
        "--experiment",
        "pol-bsm",
        "--state",
        "Psi+:psi+",
        "--engine",
        "montecarlo",
        "--samples",
        "2000",
    ];
    let output = bin()
        .args(args)
        .env("HYPERBELL_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(exit_code(&output), 0);
    assert_eq!(json_of(&output)["metadata"]["seed"], 123);
    let output = bin()
        .args(args)
        .args(["--seed", "5"])
        .env("HYPERBELL_SEED", "123")
        .output()
        .unwrap();
    assert_eq!(json_of(&output)["metadata"]["seed"], 5);
}

#[test]
fn flags_override_the_config_file() {
    let config_path = temp_path("config.json");
    let out_path = temp_path("table.json");
    std::fs::write(
        &config_path,
        r#"{
            "experiment": "pol-bsm",
            "state": "Psi-:psi+",
            "engine": "montecarlo",
            "samples": 4000,
            "seed": 1
        }"#,
    )
    .unwrap();
    let output = run(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--seed",
        "9",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout_of(&output).contains("wrote"));
    let document: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(
        document["metadata"]["seed"], 9,
        "flag did not override the file seed"
    );
    assert_eq!(
        document["metadata"]["samples"], 4000,
        "config samples not honored"
    );
    assert_eq!(document["classification"]["label"], "Psi-");
    std::fs::remove_file(&config_path).unwrap();
    std::fs::remove_file(&out_path).unwrap();
}

#[test]
fn audit_emits_the_ledger_counts() {
    let output = run(&["audit", "pol-bsm", "--json"]);
    assert_eq!(exit_code(&output), 0);
    let document = json_of(&output);
    assert_eq!(document["ledger"]["source_sets"], 8);
    assert_eq!(document["ledger"]["idle_channels"], 4);
    assert_eq!(document["ledger"]["max_distinguishable_classes"], 4);
    assert_eq!(document["achieved_classes"], 4);
    assert_eq!(document["counting_bound_satisfied"], true);

    let document = json_of(&run(&["audit", "n1-demo", "--json"]));
    assert_eq!(document["ledger"]["source_sets"], 4);
    assert_eq!(document["ledger"]["idle_channels"], 2);
    assert_eq!(document["ledger"]["max_distinguishable_classes"], 2);
    assert_eq!(document["achieved_classes"], 2);

    let human = stdout_of(&run(&["audit", "mom-bsm"]));
    assert!(
        human.contains("amplified source sets        8"),
        "human block changed: {human}"
    );
}

#[test]
fn sweep_emits_disjoint_quartets_for_admissible_states() {
    let output = run(&["sweep", "--experiment", "mom-bsm"]);
    assert_eq!(exit_code(&output), 0);
    let csv = stdout_of(&output);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 5, "header plus four admissible states");
    let mut seen = std::collections::BTreeSet::new();
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], "false", "unexpected collision in {row}");
        let bright: Vec<usize> = fields[4..]
            .iter()
            .enumerate()
            .filter(|(_, v)| v.parse::<f64>().unwrap() > 1e-6)
            .map(|(k, _)| k)
            .collect();
        assert_eq!(bright.len(), 4, "quartet size in {row}");
        for k in bright {
            assert!(
                seen.insert(k),
                "detector pair column {k} fires for two states"
            );
        }
    }
}

#[test]
fn sweep_with_override_reports_collisions() {
    let output = run(&["sweep", "--experiment", "pol-bsm", "--override-ancilla"]);
    assert_eq!(exit_code(&output), 0);
    let csv = stdout_of(&output);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 17, "header plus all sixteen states");
    let collisions = lines[1..]
        .iter()
        .filter(|row| row.split(',').nth(3) == Some("true"))
        .count();
    assert!(
        collisions > 0,
        "override sweep reported no collisions:\n{csv}"
    );
}

#[test]
fn n1_demo_runs_and_labels_sign_classes() {
    let output = run(&["simulate", "--experiment", "n1-demo", "--state", "Psi-"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(json_of(&output)["classification"]["label"], "opposite-sign");
    let output = run(&[
        "simulate",
        "--experiment",
        "n1-demo",
        "--state",
        "Psi+",
        "--engine",
        "oracle",
    ]);
    assert_eq!(
        exit_code(&output),
        2,
        "oracle engine must be rejected for n1-demo"
    );
}
