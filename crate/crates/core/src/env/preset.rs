//! Ready-made experiment configurations mirroring the published setups.
//!
//! * `rank1-fig2`: rank-1 Bernoulli matrix, `K1 = K2 = 16`, gaps
//!   `u* - u = v* - v = 0.2` in both factors and a sweepable peak mean
//!   `u* v*` (default 0.5; a useful sweep is 0.25, 0.5, 0.75).
//! * `duel-fig3`: utility duel where the best arm beats every other arm with
//!   probability 0.7 (utility gap 0.4), `K = 16`.
//! * `duel-figC`: the same shape with probability 0.95 (utility gap 0.9) and
//!   `K = 64`.
//!
//! In every preset the best arm has the highest index, so learners that
//! break ties toward low indices get no free head start.

use std::fmt;
use std::str::FromStr;

use crate::harness::{ConfigError, EnvSpec, ExperimentConfig, ExperimentKind};
use crate::harness::{DEFAULT_HORIZON, DEFAULT_REPETITIONS};
use crate::ledger::DEFAULT_CHECKPOINT_RATIO;

/// Per-factor gap of the rank-1 preset.
pub const RANK1_GAP: f64 = 0.2;
pub const RANK1_DEFAULT_PEAK: f64 = 0.5;
pub const DUEL_FIG3_GAP: f64 = 0.4;
pub const DUEL_FIGC_GAP: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    Rank1Fig2,
    DuelFig3,
    DuelFigC,
}

impl PresetName {
    pub const ALL: [PresetName; 3] = [PresetName::Rank1Fig2, PresetName::DuelFig3, PresetName::DuelFigC];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Rank1Fig2 => "rank1-fig2",
            PresetName::DuelFig3 => "duel-fig3",
            PresetName::DuelFigC => "duel-figC",
        }
    }

    pub fn default_arms(self) -> usize {
        match self {
            PresetName::Rank1Fig2 | PresetName::DuelFig3 => 16,
            PresetName::DuelFigC => 64,
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownPreset(s.to_string()))
    }
}

/// Overrides for desk-scale runs; `None` keeps the preset's value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PresetOptions {
    /// Arms per factor (rank-1) or number of arms (duels).
    pub arms: Option<usize>,
    pub horizon: Option<u64>,
    /// `u* v*` for `rank1-fig2`.
    pub peak: Option<f64>,
    pub repetitions: Option<u64>,
    pub seed: Option<u64>,
}

fn best_last(arms: usize, best: f64, other: f64) -> Vec<f64> {
    let mut values = vec![other; arms];
    values[arms - 1] = best;
    values
}

pub fn paper_preset(name: PresetName, options: &PresetOptions) -> Result<ExperimentConfig, ConfigError> {
    let arms = options.arms.unwrap_or(name.default_arms());
    if arms < 2 {
        return Err(ConfigError::PresetOption(format!("need at least 2 arms, got {arms}")));
    }
    if name != PresetName::Rank1Fig2 && options.peak.is_some() {
        return Err(ConfigError::PresetOption(format!("{name} has no peak parameter")));
    }
    let (kind, environment, algorithms) = match name {
        PresetName::Rank1Fig2 => {
            let peak = options.peak.unwrap_or(RANK1_DEFAULT_PEAK);
            let top = peak.sqrt();
            if !(top > RANK1_GAP && top <= 1.0) {
                return Err(ConfigError::PresetOption(format!(
                    "peak {peak} must lie in ({}, 1]",
                    RANK1_GAP * RANK1_GAP
                )));
            }
            let factor = best_last(arms, top, top - RANK1_GAP);
            (
                ExperimentKind::Factored,
                EnvSpec::Rank1 {
                    u_bar: factor.clone(),
                    v_bar: factor,
                },
                vec!["tea", "sparring", "horizon_elim"],
            )
        }
        PresetName::DuelFig3 | PresetName::DuelFigC => {
            let gap = if name == PresetName::DuelFig3 {
                DUEL_FIG3_GAP
            } else {
                DUEL_FIGC_GAP
            };
            (
                ExperimentKind::Dueling,
                EnvSpec::UtilityDuel {
                    utilities: best_last(arms, gap, 0.0),
                },
                vec!["dbtea", "sparring_duel"],
            )
        }
    };
    let config = ExperimentConfig {
        kind,
        env_id: Some(name.as_str().to_string()),
        environment: Some(environment),
        algorithms: algorithms.into_iter().map(String::from).collect(),
        horizon: options.horizon.unwrap_or(DEFAULT_HORIZON),
        repetitions: options.repetitions.unwrap_or(DEFAULT_REPETITIONS),
        seed: options.seed.unwrap_or(0),
        checkpoint_ratio: DEFAULT_CHECKPOINT_RATIO,
        output: None,
        trials: crate::harness::DEFAULT_VERIFY_TRIALS,
    };
    config.validate()?;
    Ok(config)
}
