use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::config::{Algorithm, BuiltEnv, ExperimentConfig, ExperimentKind};
use super::format::format_regret;
use super::seed::{child_seed, env_rng};
use super::{ConfigError, HarnessError};
use crate::baselines::{horizon_elim_run, sparring_duel_run, sparring_run};
use crate::concentration::{run_suite, SuiteReport};
use crate::dbtea::dbtea_run;
use crate::env::FactoredEnv;
use crate::ledger::{Checkpoint, RegretLedger};
use crate::oracle::{compute_gaps, compute_kappa, duel_gaps};
use crate::tea::{tea_run, LearnerError};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const VERIFY_FILE: &str = "verify.csv";

/// Deltas exercised by `verify` experiments.
const VERIFY_DELTAS: [f64; 2] = [0.05, 0.1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Serial,
}

/// Checkpoints of one (algorithm, repetition) run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub algo: Algorithm,
    pub rep: u64,
    pub checkpoints: Vec<Checkpoint>,
}

impl RunResult {
    pub fn final_regret(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |c| c.cum_regret)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub algo: String,
    pub env_id: String,
    pub rep: u64,
    pub t: u64,
    pub cum_regret: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub algo: String,
    pub env_id: String,
    pub reps: u64,
    pub final_t: u64,
    pub mean_regret: f64,
    pub stderr_regret: f64,
}

fn run_one(
    algo: Algorithm,
    env: &BuiltEnv,
    config: &ExperimentConfig,
    rep: u64,
) -> Result<RunResult, LearnerError> {
    let child = child_seed(config.seed, algo.name(), rep);
    let mut rng = env_rng(child);
    let (horizon, ratio) = (config.horizon, config.checkpoint_ratio);

    fn factored<E: FactoredEnv>(
        algo: Algorithm,
        env: &E,
        horizon: u64,
        child: u64,
        rng: &mut rand_chacha::ChaCha8Rng,
        ratio: f64,
    ) -> Result<RegretLedger, LearnerError> {
        match algo {
            Algorithm::Tea => tea_run(env, horizon, child, rng, ratio),
            Algorithm::Sparring => sparring_run(env, horizon, rng, ratio),
            Algorithm::HorizonElim => horizon_elim_run(env, horizon, child, rng, ratio),
            Algorithm::DbTea | Algorithm::SparringDuel => {
                unreachable!("validation rejects dueling learners on factored environments")
            }
        }
    }

    let ledger = match env {
        BuiltEnv::Rank1(env) => factored(algo, env, horizon, child, &mut rng, ratio)?,
        BuiltEnv::Additive(env) => factored(algo, env, horizon, child, &mut rng, ratio)?,
        BuiltEnv::Duel(env) => match algo {
            Algorithm::DbTea => dbtea_run(env, horizon, child, &mut rng, ratio)?,
            Algorithm::SparringDuel => sparring_duel_run(env, horizon, &mut rng, ratio)?,
            _ => unreachable!("validation rejects factored learners on dueling environments"),
        },
    };
    Ok(RunResult {
        algo,
        rep,
        checkpoints: ledger.checkpoints().to_vec(),
    })
}

/// Runs every (algorithm, repetition) pair and returns the results sorted by
/// algorithm name, then repetition.
pub fn simulate(config: &ExperimentConfig, execution: Execution) -> Result<Vec<RunResult>, HarnessError> {
    let validated = config.validate()?;
    let env = validated.env.ok_or(ConfigError::MissingEnvironment)?;
    let jobs: Vec<(Algorithm, u64)> = validated
        .algorithms
        .iter()
        .flat_map(|&a| (0..config.repetitions).map(move |r| (a, r)))
        .collect();
    let mut results: Vec<RunResult> = match execution {
        Execution::Parallel => jobs
            .par_iter()
            .map(|&(a, r)| run_one(a, &env, config, r))
            .collect::<Result<_, _>>()?,
        Execution::Serial => jobs
            .iter()
            .map(|&(a, r)| run_one(a, &env, config, r))
            .collect::<Result<_, _>>()?,
    };
    results.sort_by(|x, y| x.algo.name().cmp(y.algo.name()).then(x.rep.cmp(&y.rep)));
    Ok(results)
}

pub fn summarize(config: &ExperimentConfig, results: &[RunResult]) -> Vec<SummaryRow> {
    let env_id = config.env_label();
    let mut rows: Vec<SummaryRow> = Vec::new();
    for chunk in results.chunk_by(|a, b| a.algo == b.algo) {
        let finals: Vec<f64> = chunk.iter().map(RunResult::final_regret).collect();
        let n = finals.len() as f64;
        let mean = finals.iter().sum::<f64>() / n;
        let stderr = if finals.len() > 1 {
            let var = finals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        rows.push(SummaryRow {
            algo: chunk[0].algo.name().to_string(),
            env_id: env_id.clone(),
            reps: chunk.len() as u64,
            final_t: chunk[0].checkpoints.last().map_or(0, |c| c.t),
            mean_regret: mean,
            stderr_regret: stderr,
        });
    }
    rows
}

fn csv_text<F>(header: &[&str], fill: F) -> String
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>,
{
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    fill(&mut writer).expect("in-memory write");
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn render_results(config: &ExperimentConfig, results: &[RunResult]) -> String {
    let env_id = config.env_label();
    csv_text(&["algo", "env_id", "rep", "t", "cum_regret"], |w| {
        for run in results {
            for c in &run.checkpoints {
                w.write_record([
                    run.algo.name(),
                    &env_id,
                    &run.rep.to_string(),
                    &c.t.to_string(),
                    &format_regret(c.cum_regret),
                ])?;
            }
        }
        Ok(())
    })
}

pub fn render_summary(rows: &[SummaryRow]) -> String {
    csv_text(
        &["algo", "env_id", "reps", "final_t", "mean_regret", "stderr_regret"],
        |w| {
            for r in rows {
                w.write_record([
                    r.algo.as_str(),
                    &r.env_id,
                    &r.reps.to_string(),
                    &r.final_t.to_string(),
                    &format_regret(r.mean_regret),
                    &format_regret(r.stderr_regret),
                ])?;
            }
            Ok(())
        },
    )
}

pub fn render_verify(report: &SuiteReport) -> String {
    csv_text(
        &["check", "delta", "trials", "violations", "rate", "tolerance", "passed"],
        |w| {
            for r in &report.tails {
                w.write_record([
                    r.name.as_str(),
                    &format_regret(r.delta),
                    &r.trials.to_string(),
                    &r.violations.to_string(),
                    &format_regret(r.rate()),
                    &format_regret(r.tolerance()),
                    &r.passed.to_string(),
                ])?;
            }
            let p = &report.reparam;
            w.write_record([
                "reparam_inequality[reconstructed]",
                "",
                &p.checked.to_string(),
                &p.violations.to_string(),
                &format_regret(p.violations as f64 / p.checked.max(1) as f64),
                "0",
                &p.passed.to_string(),
            ])?;
            Ok(())
        },
    )
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentOutput {
    Regret {
        results: PathBuf,
        summary: PathBuf,
        rows: Vec<SummaryRow>,
    },
    Verify {
        path: PathBuf,
        report: SuiteReport,
    },
}

fn write(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    run_experiment_with(config, Execution::Parallel)
}

/// Validates `config`, runs it and writes its CSV files into `config.output`.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    execution: Execution,
) -> Result<ExperimentOutput, HarnessError> {
    config.validate()?;
    let dir = config.output.clone().ok_or(ConfigError::MissingOutput)?;
    if config.kind == ExperimentKind::Verify {
        let report = run_suite(&VERIFY_DELTAS, config.trials, config.seed)?;
        fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
        let path = dir.join(VERIFY_FILE);
        write(&path, &render_verify(&report))?;
        return Ok(ExperimentOutput::Verify { path, report });
    }
    let results = simulate(config, execution)?;
    let rows = summarize(config, &results);
    fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
    let results_path = dir.join(RESULTS_FILE);
    let summary_path = dir.join(SUMMARY_FILE);
    write(&results_path, &render_results(config, &results))?;
    write(&summary_path, &render_summary(&rows))?;
    Ok(ExperimentOutput::Regret {
        results: results_path,
        summary: summary_path,
        rows,
    })
}

/// Gap table and `kappa` of a config's environment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub env_id: String,
    pub best: Vec<usize>,
    pub gaps: Vec<Vec<f64>>,
    /// Absent for dueling environments.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

pub fn oracle_report(config: &ExperimentConfig) -> Result<OracleReport, HarnessError> {
    let spec = config.environment.as_ref().ok_or(ConfigError::MissingEnvironment)?;
    let (table, kappa) = match spec.build()? {
        BuiltEnv::Rank1(env) => {
            let t = compute_gaps(&env)?;
            let k = compute_kappa(&env, &t)?;
            (t, Some(k))
        }
        BuiltEnv::Additive(env) => {
            let t = compute_gaps(&env)?;
            let k = compute_kappa(&env, &t)?;
            (t, Some(k))
        }
        BuiltEnv::Duel(env) => (duel_gaps(&env)?, None),
    };
    Ok(OracleReport {
        env_id: config.env_label(),
        best: table.best().to_vec(),
        gaps: table.gaps().to_vec(),
        kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"kind":"factored","env_id":"toy",
                "environment":{"type":"additive_gaussian","mu_star":0.5,"gaps":[[0,0.5,0.5],[0,0.3]]},
                "algorithms":["tea","sparring","horizon_elim"],"horizon":3000,"repetitions":3,"seed":11}"#,
        )
        .unwrap()
    }

    #[test]
    fn results_are_sorted_and_complete() {
        let c = config();
        let results = simulate(&c, Execution::Serial).unwrap();
        let order: Vec<(&str, u64)> = results.iter().map(|r| (r.algo.name(), r.rep)).collect();
        assert_eq!(
            order,
            vec![
                ("horizon_elim", 0),
                ("horizon_elim", 1),
                ("horizon_elim", 2),
                ("sparring", 0),
                ("sparring", 1),
                ("sparring", 2),
                ("tea", 0),
                ("tea", 1),
                ("tea", 2)
            ]
        );
        for r in &results {
            assert_eq!(r.checkpoints.last().unwrap().t, 3000);
            assert!(r.checkpoints.windows(2).all(|w| w[0].t < w[1].t));
        }
    }

    #[test]
    fn summary_statistics() {
        let c = config();
        let results = simulate(&c, Execution::Serial).unwrap();
        let rows = summarize(&c, &results);
        assert_eq!(rows.len(), 3);
        let tea: Vec<f64> = results
            .iter()
            .filter(|r| r.algo == Algorithm::Tea)
            .map(RunResult::final_regret)
            .collect();
        let mean = tea.iter().sum::<f64>() / 3.0;
        let sd = (tea.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 2.0).sqrt();
        assert_eq!(rows[2].algo, "tea");
        assert!((rows[2].mean_regret - mean).abs() < 1e-9);
        assert!((rows[2].stderr_regret - sd / 3f64.sqrt()).abs() < 1e-9);
        assert_eq!(rows[2].final_t, 3000);
    }

    #[test]
    fn csv_headers_and_line_endings() {
        let c = config();
        let results = simulate(&c, Execution::Serial).unwrap();
        let text = render_results(&c, &results);
        assert!(text.starts_with("algo,env_id,rep,t,cum_regret\nhorizon_elim,toy,0,1,"));
        assert!(!text.contains('\r'));
        let summary = render_summary(&summarize(&c, &results));
        assert!(summary.starts_with("algo,env_id,reps,final_t,mean_regret,stderr_regret\n"));
    }

    #[test]
    fn oracle_for_additive_config() {
        let report = oracle_report(&config()).unwrap();
        assert_eq!(report.best, vec![0, 0]);
        assert_eq!(report.kappa, Some(1.0));
    }
}
