//! Synthetic stochastic environments.
//!
//! Factored environments map a [`CompositeAction`] to a reward; dueling
//! environments map an ordered pair of arms to a win indicator. Every
//! environment is immutable after construction and samples from an RNG
//! stream owned by the caller.
//!
//! Gaussian noise is drawn with `rand_distr::StandardNormal` (ziggurat
//! method) from whatever generator the caller passes; the harness always
//! passes a seeded `ChaCha8Rng`, which is value-stable across platforms.

mod additive;
mod duel;
pub mod preset;
mod rank1;
mod tabular;

pub use additive::AdditiveGaussianEnv;
pub use duel::{linear_link, UtilityDuelEnv};
pub use preset::{paper_preset, PresetName, PresetOptions};
pub use rank1::Rank1Env;
pub use tabular::TabularEnv;

use rand::Rng;
use thiserror::Error;

use crate::space::{CompositeAction, FactoredActionSpace, SpaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("arm {arm} out of range for {arms} arms")]
    ArmOutOfRange { arm: usize, arms: usize },
    #[error("mean {mean} of action {action} outside [-1, 1]")]
    MeanOutOfRange { action: String, mean: f64 },
    #[error("factor {0} has no unique best arm")]
    NoUniqueBest(usize),
    #[error("invalid environment: {0}")]
    Invalid(String),
}

/// Stochastic reward contract for factored bandits.
pub trait FactoredEnv {
    fn space(&self) -> &FactoredActionSpace;

    /// Declared mean reward of `action`, without sampling.
    fn exact_mean(&self, action: &CompositeAction) -> Result<f64, EnvError>;

    /// One reward sample for `action`.
    fn sample_reward<R: Rng + ?Sized>(
        &self,
        action: &CompositeAction,
        rng: &mut R,
    ) -> Result<f64, EnvError>;

    /// Mean of the best composite action.
    fn optimal_mean(&self) -> f64;

    /// Pseudo-regret of a single play of `action`.
    fn instant_regret(&self, action: &CompositeAction) -> Result<f64, EnvError> {
        Ok(self.optimal_mean() - self.exact_mean(action)?)
    }
}

/// Stochastic duel contract for utility-based dueling bandits.
pub trait DuelEnv {
    fn arms(&self) -> usize;

    /// Probability that `first` beats `second`.
    fn win_probability(&self, first: usize, second: usize) -> Result<f64, EnvError>;

    /// Samples `w(first, second)`: `true` if `first` wins.
    fn sample_duel<R: Rng + ?Sized>(
        &self,
        first: usize,
        second: usize,
        rng: &mut R,
    ) -> Result<bool, EnvError> {
        let p = self.win_probability(first, second)?;
        Ok(rng.random::<f64>() < p)
    }

    /// Dueling pseudo-regret of one duel.
    fn duel_regret(&self, first: usize, second: usize) -> Result<f64, EnvError>;
}

pub(crate) fn check_mean(action: &CompositeAction, mean: f64) -> Result<(), EnvError> {
    if mean.is_finite() && (-1.0..=1.0).contains(&mean) {
        Ok(())
    } else {
        Err(EnvError::MeanOutOfRange {
            action: action.to_string(),
            mean,
        })
    }
}

/// Index of the unique maximum, `None` on ties or empty input.
pub(crate) fn unique_argmax(values: &[f64]) -> Option<usize> {
    let (best, &max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    let ties = values.iter().filter(|&&v| v == max).count();
    (ties == 1).then_some(best)
}
