//! Experiment runner: JSON configs, seeded repetitions, CSV output and the
//! command-line front end.
//!
//! `results.csv` has header `algo,env_id,rep,t,cum_regret` with one row per
//! ledger checkpoint; `summary.csv` has header
//! `algo,env_id,reps,final_t,mean_regret,stderr_regret`. Rows are sorted by
//! algorithm name, then repetition, then `t`. Regret is printed with ten
//! significant digits and lines end in LF.

pub mod cli;
mod config;
mod format;
mod run;
pub mod seed;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{
    Algorithm, BuiltEnv, EnvSpec, ExperimentConfig, ExperimentKind, Validated, DEFAULT_HORIZON,
    DEFAULT_REPETITIONS, DEFAULT_VERIFY_TRIALS,
};
pub use format::{format_regret, format_sig};
pub use run::{
    oracle_report, render_results, render_summary, render_verify, run_experiment,
    run_experiment_with, simulate, summarize, Execution, ExperimentOutput, OracleReport,
    ResultRow, RunResult, SummaryRow, RESULTS_FILE, SUMMARY_FILE, VERIFY_FILE,
};

use crate::concentration::ConcentrationError;
use crate::env::EnvError;
use crate::oracle::OracleError;
use crate::tea::LearnerError;

/// Problems with a config's content. All map to exit code 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),
    #[error("algorithm '{0}' listed twice")]
    DuplicateAlgorithm(String),
    #[error("algorithm '{algorithm}' cannot run a {kind} experiment")]
    AlgorithmKind {
        algorithm: String,
        kind: ExperimentKind,
    },
    #[error("no algorithms configured")]
    NoAlgorithms,
    #[error("experiment needs an environment")]
    MissingEnvironment,
    #[error("environment '{environment}' does not fit a {kind} experiment")]
    EnvironmentKind {
        environment: &'static str,
        kind: ExperimentKind,
    },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("repetitions must be at least 1")]
    ZeroRepetitions,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("checkpoint ratio must be a finite number above 1, got {0}")]
    BadCheckpointRatio(f64),
    #[error("unknown preset '{0}' (expected rank1-fig2, duel-fig3 or duel-figC)")]
    UnknownPreset(String),
    #[error("invalid preset option: {0}")]
    PresetOption(String),
    #[error("no output directory: set `output` in the config or pass --out")]
    MissingOutput,
    #[error(transparent)]
    Env(#[from] EnvError),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Learner(#[from] LearnerError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Concentration(#[from] ConcentrationError),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for file-system failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io { .. } => 2,
            _ => 1,
        }
    }
}
