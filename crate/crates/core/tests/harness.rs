use std::fs;
use std::path::Path;
use std::process::Command;

use factored_bandits::harness::{
    run_experiment, simulate, Execution, ExperimentConfig, RunResult, RESULTS_FILE, SUMMARY_FILE,
};

const FACTORED: &str = r#"{
  "kind": "factored",
  "env_id": "small-rank1",
  "environment": {"type": "rank1", "u_bar": [0.2, 0.9, 0.5], "v_bar": [0.7, 0.4]},
  "algorithms": ["tea", "sparring", "horizon_elim"],
  "horizon": 5000,
  "repetitions": 4,
  "seed": 3
}"#;

fn fbandit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fbandit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn curves_of(results: &[RunResult], algo: &str) -> Vec<RunResult> {
    results.iter().filter(|r| r.algo.name() == algo).cloned().collect()
}

#[test]
fn algorithm_order_does_not_change_curves() {
    let forward = ExperimentConfig::from_json(FACTORED).unwrap();
    let mut reversed = forward.clone();
    reversed.algorithms.reverse();
    let a = simulate(&forward, Execution::Parallel).unwrap();
    let b = simulate(&reversed, Execution::Parallel).unwrap();
    for algo in ["tea", "sparring", "horizon_elim"] {
        assert_eq!(curves_of(&a, algo), curves_of(&b, algo), "{algo}");
    }
    let mut only_tea = forward.clone();
    only_tea.algorithms = vec!["tea".into()];
    assert_eq!(curves_of(&simulate(&only_tea, Execution::Serial).unwrap(), "tea"), curves_of(&a, "tea"));
}

#[test]
fn single_repetition_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let mut config = ExperimentConfig::from_json(FACTORED).unwrap();
        config.repetitions = 1;
        config.output = Some(dir.path().join(format!("run{i}")));
        run_experiment(&config).unwrap();
        let out = config.output.unwrap();
        outputs.push((fs::read(out.join(RESULTS_FILE)).unwrap(), fs::read(out.join(SUMMARY_FILE)).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn different_master_seeds_differ() {
    let config = ExperimentConfig::from_json(FACTORED).unwrap();
    let mut other = config.clone();
    other.seed += 1;
    assert_ne!(
        simulate(&config, Execution::Serial).unwrap(),
        simulate(&other, Execution::Serial).unwrap()
    );
}

#[test]
fn cli_missing_config_is_io_failure() {
    let out = fbandit(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/config.json"));
}

#[test]
fn cli_unknown_algorithm_is_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, FACTORED.replace("\"sparring\"", "\"rank1elim\"")).unwrap();
    let out = fbandit(&["run", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank1elim"));
}

#[test]
fn cli_malformed_config_and_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(fbandit(&["run", "--config", path.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(fbandit(&["run"]).status.code(), Some(1));
    assert_eq!(fbandit(&["preset", "--name", "fig7", "--out", "x.json"]).status.code(), Some(1));
}

fn read_csv(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(String::from).collect()
}

#[test]
fn cli_preset_then_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("duel.json");
    let out_dir = dir.path().join("out");
    let status = fbandit(&[
        "preset", "--name", "duel-fig3", "--out", config.to_str().unwrap(), "--arms", "6", "--horizon", "3000",
        "--reps", "3",
    ]);
    assert_eq!(status.status.code(), Some(0));
    let run = fbandit(&["run", "--config", config.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let results = read_csv(&out_dir.join(RESULTS_FILE));
    assert_eq!(results[0], "algo,env_id,rep,t,cum_regret");
    assert!(results[1].starts_with("dbtea,duel-fig3,0,1,"));
    assert!(results.iter().any(|l| l.starts_with("sparring_duel,duel-fig3,2,3000,")));
    let summary = read_csv(&out_dir.join(SUMMARY_FILE));
    assert_eq!(summary[0], "algo,env_id,reps,final_t,mean_regret,stderr_regret");
    assert_eq!(summary.len(), 3);
    assert!(summary[1].starts_with("dbtea,duel-fig3,3,3000,"));
}

#[test]
fn cli_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, FACTORED).unwrap();
    let out_dir = dir.path().join("o");
    let run = fbandit(&[
        "run", "--config", path.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "--reps", "2", "--horizon",
        "700",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let summary = read_csv(&out_dir.join(SUMMARY_FILE));
    assert!(summary[1..].iter().all(|l| l.contains(",2,700,")), "{summary:?}");
}

#[test]
fn cli_unwritable_output_is_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, FACTORED).unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = fbandit(&["run", "--config", path.to_str().unwrap(), "--out", blocker.join("sub").to_str().unwrap(), "--horizon", "50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cli_oracle_dumps_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    fs::write(&path, FACTORED).unwrap();
    let out = fbandit(&["oracle", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["best"], serde_json::json!([1, 0]));
    // (0.9 - 0.2) * min v = 0.7 * 0.4
    assert!((json["gaps"][0][0].as_f64().unwrap() - 0.28).abs() < 1e-12);
    assert!(json["kappa"].as_f64().unwrap() >= 1.0);
}

#[test]
fn cli_verify_prints_one_row_per_check() {
    let out = fbandit(&["verify", "--trials", "500", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "check,delta,trials,violations,rate,tolerance,passed");
    assert_eq!(lines.len(), 1 + 10 + 1);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn verify_experiment_config() {
    let dir = tempfile::tempdir().unwrap();
    let mut config = ExperimentConfig::from_json(r#"{"kind":"verify","trials":300,"seed":4}"#).unwrap();
    config.output = Some(dir.path().to_path_buf());
    run_experiment(&config).unwrap();
    assert!(dir.path().join("verify.csv").exists());
}
