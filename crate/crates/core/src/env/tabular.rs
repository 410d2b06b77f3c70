use rand::Rng;
use rand_distr::StandardNormal;

use super::{check_mean, EnvError, FactoredEnv};
use crate::space::{CompositeAction, FactoredActionSpace};

/// Explicit mean table over all composite actions with Gaussian noise.
///
/// Unlike the structured environments this one does not require uniform
/// identifiability, which makes it useful for exercising the oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularEnv {
    space: FactoredActionSpace,
    means: Vec<f64>,
    noise_sd: f64,
    optimal: f64,
}

impl TabularEnv {
    /// `means` is indexed in the order of [`FactoredActionSpace::iter`].
    pub fn new(space: FactoredActionSpace, means: Vec<f64>, noise_sd: f64) -> Result<Self, EnvError> {
        let expected = space
            .cardinality()
            .ok_or_else(|| EnvError::Invalid("space too large for a mean table".into()))?;
        if means.len() != expected {
            return Err(EnvError::Invalid(format!(
                "mean table has {} entries, space has {expected} actions",
                means.len()
            )));
        }
        for (action, &mean) in space.iter().zip(&means) {
            check_mean(&action, mean)?;
        }
        if !(noise_sd.is_finite() && noise_sd >= 0.0) {
            return Err(EnvError::Invalid(format!("noise sd {noise_sd}")));
        }
        let optimal = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            space,
            means,
            noise_sd,
            optimal,
        })
    }

    /// Builds the table by evaluating `mean` on every composite action.
    pub fn from_fn(
        space: FactoredActionSpace,
        noise_sd: f64,
        mut mean: impl FnMut(&CompositeAction) -> f64,
    ) -> Result<Self, EnvError> {
        let means = space.iter().map(|a| mean(&a)).collect();
        Self::new(space, means, noise_sd)
    }

    fn index(&self, action: &CompositeAction) -> usize {
        action
            .coords()
            .iter()
            .zip(self.space.sizes())
            .fold(0, |acc, (&c, &k)| acc * k + c)
    }
}

impl FactoredEnv for TabularEnv {
    fn space(&self) -> &FactoredActionSpace {
        &self.space
    }

    fn exact_mean(&self, action: &CompositeAction) -> Result<f64, EnvError> {
        self.space.validate(action)?;
        Ok(self.means[self.index(action)])
    }

    fn sample_reward<R: Rng + ?Sized>(
        &self,
        action: &CompositeAction,
        rng: &mut R,
    ) -> Result<f64, EnvError> {
        let noise: f64 = rng.sample(StandardNormal);
        Ok(self.exact_mean(action)? + self.noise_sd * noise)
    }

    fn optimal_mean(&self) -> f64 {
        self.optimal
    }
}
