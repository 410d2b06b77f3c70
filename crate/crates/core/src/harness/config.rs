use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ConfigError;
use crate::env::{AdditiveGaussianEnv, Rank1Env, UtilityDuelEnv};

pub const DEFAULT_HORIZON: u64 = 100_000;
pub const DEFAULT_REPETITIONS: u64 = 20;
pub const DEFAULT_VERIFY_TRIALS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Factored,
    Dueling,
    Verify,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Factored => "factored",
            ExperimentKind::Dueling => "dueling",
            ExperimentKind::Verify => "verify",
        })
    }
}

/// Environment description as it appears in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvSpec {
    Rank1 { u_bar: Vec<f64>, v_bar: Vec<f64> },
    AdditiveGaussian { mu_star: f64, gaps: Vec<Vec<f64>> },
    UtilityDuel { utilities: Vec<f64> },
}

impl EnvSpec {
    pub fn type_name(&self) -> &'static str {
        match self {
            EnvSpec::Rank1 { .. } => "rank1",
            EnvSpec::AdditiveGaussian { .. } => "additive_gaussian",
            EnvSpec::UtilityDuel { .. } => "utility_duel",
        }
    }

    pub fn kind(&self) -> ExperimentKind {
        match self {
            EnvSpec::Rank1 { .. } | EnvSpec::AdditiveGaussian { .. } => ExperimentKind::Factored,
            EnvSpec::UtilityDuel { .. } => ExperimentKind::Dueling,
        }
    }

    pub fn build(&self) -> Result<BuiltEnv, ConfigError> {
        Ok(match self {
            EnvSpec::Rank1 { u_bar, v_bar } => BuiltEnv::Rank1(Rank1Env::new(u_bar.clone(), v_bar.clone())?),
            EnvSpec::AdditiveGaussian { mu_star, gaps } => {
                BuiltEnv::Additive(AdditiveGaussianEnv::new(*mu_star, gaps.clone())?)
            }
            EnvSpec::UtilityDuel { utilities } => BuiltEnv::Duel(UtilityDuelEnv::new(utilities.clone())?),
        })
    }
}

#[derive(Debug, Clone)]
pub enum BuiltEnv {
    Rank1(Rank1Env),
    Additive(AdditiveGaussianEnv),
    Duel(UtilityDuelEnv),
}

/// Registered learners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Tea,
    Sparring,
    HorizonElim,
    DbTea,
    SparringDuel,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Tea,
        Algorithm::Sparring,
        Algorithm::HorizonElim,
        Algorithm::DbTea,
        Algorithm::SparringDuel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Tea => "tea",
            Algorithm::Sparring => "sparring",
            Algorithm::HorizonElim => "horizon_elim",
            Algorithm::DbTea => "dbtea",
            Algorithm::SparringDuel => "sparring_duel",
        }
    }

    pub fn kind(self) -> ExperimentKind {
        match self {
            Algorithm::Tea | Algorithm::Sparring | Algorithm::HorizonElim => ExperimentKind::Factored,
            Algorithm::DbTea | Algorithm::SparringDuel => ExperimentKind::Dueling,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| ConfigError::UnknownAlgorithm(s.to_string()))
    }
}

fn default_horizon() -> u64 {
    DEFAULT_HORIZON
}
fn default_repetitions() -> u64 {
    DEFAULT_REPETITIONS
}
fn default_ratio() -> f64 {
    crate::ledger::DEFAULT_CHECKPOINT_RATIO
}
fn default_trials() -> u64 {
    DEFAULT_VERIFY_TRIALS
}

/// One experiment, serialized as a single JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub env_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvSpec>,
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    #[serde(default = "default_repetitions")]
    pub repetitions: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_ratio")]
    pub checkpoint_ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Monte Carlo trials per check, `verify` experiments only.
    #[serde(default = "default_trials")]
    pub trials: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }

    /// Environment id written to result rows.
    pub fn env_label(&self) -> String {
        match (&self.env_id, &self.environment) {
            (Some(id), _) => id.clone(),
            (None, Some(spec)) => spec.type_name().to_string(),
            (None, None) => self.kind.to_string(),
        }
    }

    pub fn validate(&self) -> Result<Validated, ConfigError> {
        if self.horizon == 0 {
            return Err(ConfigError::ZeroHorizon);
        }
        if self.repetitions == 0 {
            return Err(ConfigError::ZeroRepetitions);
        }
        if !(self.checkpoint_ratio > 1.0 && self.checkpoint_ratio.is_finite()) {
            return Err(ConfigError::BadCheckpointRatio(self.checkpoint_ratio));
        }
        let mut algorithms = Vec::with_capacity(self.algorithms.len());
        for name in &self.algorithms {
            let algo: Algorithm = name.parse()?;
            if algorithms.contains(&algo) {
                return Err(ConfigError::DuplicateAlgorithm(name.clone()));
            }
            if self.kind != ExperimentKind::Verify && algo.kind() != self.kind {
                return Err(ConfigError::AlgorithmKind {
                    algorithm: name.clone(),
                    kind: self.kind,
                });
            }
            algorithms.push(algo);
        }
        if self.kind == ExperimentKind::Verify {
            if self.trials == 0 {
                return Err(ConfigError::ZeroTrials);
            }
            return Ok(Validated {
                env: None,
                algorithms,
            });
        }
        if algorithms.is_empty() {
            return Err(ConfigError::NoAlgorithms);
        }
        let spec = self.environment.as_ref().ok_or(ConfigError::MissingEnvironment)?;
        if spec.kind() != self.kind {
            return Err(ConfigError::EnvironmentKind {
                environment: spec.type_name(),
                kind: self.kind,
            });
        }
        Ok(Validated {
            env: Some(spec.build()?),
            algorithms,
        })
    }
}

/// A config that passed validation, with its environment constructed.
#[derive(Debug, Clone)]
pub struct Validated {
    pub env: Option<BuiltEnv>,
    pub algorithms: Vec<Algorithm>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{"kind":"dueling","environment":{"type":"utility_duel","utilities":[0.4,0,0]},
                "algorithms":["dbtea","sparring_duel"],"seed":7}"#,
        )
        .unwrap()
    }

    #[test]
    fn defaults_fill_in() {
        let c = sample();
        assert_eq!(c.horizon, DEFAULT_HORIZON);
        assert_eq!(c.repetitions, 20);
        assert_eq!(c.checkpoint_ratio, 1.1);
        assert_eq!(c.env_label(), "utility_duel");
        assert!(c.validate().is_ok());
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert_eq!(ExperimentConfig::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn unknown_algorithm_is_named() {
        let mut c = sample();
        c.algorithms.push("rucb".into());
        let err = c.validate().unwrap_err();
        assert_eq!(err, ConfigError::UnknownAlgorithm("rucb".into()));
        assert!(err.to_string().contains("rucb"));
    }

    #[test]
    fn kind_mismatches() {
        let mut c = sample();
        c.algorithms = vec!["tea".into()];
        assert!(matches!(c.validate(), Err(ConfigError::AlgorithmKind { .. })));
        let mut c = sample();
        c.kind = ExperimentKind::Factored;
        c.algorithms = vec!["tea".into()];
        assert!(matches!(c.validate(), Err(ConfigError::EnvironmentKind { .. })));
    }

    #[test]
    fn rejects_bad_scalars() {
        let mut c = sample();
        c.horizon = 0;
        assert_eq!(c.validate().unwrap_err(), ConfigError::ZeroHorizon);
        let mut c = sample();
        c.checkpoint_ratio = 1.0;
        assert!(matches!(c.validate(), Err(ConfigError::BadCheckpointRatio(_))));
        assert!(ExperimentConfig::from_json(r#"{"kind":"verify","bogus":1}"#).is_err());
    }
}
