use rand::Rng;

use super::{unique_argmax, EnvError, FactoredEnv};
use crate::space::{CompositeAction, FactoredActionSpace};

/// Stochastic rank-1 bandit: Bernoulli reward with mean `u_bar[u] * v_bar[v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Env {
    u_bar: Vec<f64>,
    v_bar: Vec<f64>,
    space: FactoredActionSpace,
    optimal: f64,
}

impl Rank1Env {
    pub fn new(u_bar: Vec<f64>, v_bar: Vec<f64>) -> Result<Self, EnvError> {
        let space = FactoredActionSpace::new(vec![u_bar.len(), v_bar.len()])?;
        for (name, values) in [("u_bar", &u_bar), ("v_bar", &v_bar)] {
            if let Some(x) = values.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                return Err(EnvError::Invalid(format!("{name} entry {x} outside [0, 1]")));
            }
        }
        let u_best = unique_argmax(&u_bar).ok_or(EnvError::NoUniqueBest(0))?;
        let v_best = unique_argmax(&v_bar).ok_or(EnvError::NoUniqueBest(1))?;
        let optimal = u_bar[u_best] * v_bar[v_best];
        Ok(Self {
            u_bar,
            v_bar,
            space,
            optimal,
        })
    }

    pub fn u_bar(&self) -> &[f64] {
        &self.u_bar
    }

    pub fn v_bar(&self) -> &[f64] {
        &self.v_bar
    }
}

impl FactoredEnv for Rank1Env {
    fn space(&self) -> &FactoredActionSpace {
        &self.space
    }

    fn exact_mean(&self, action: &CompositeAction) -> Result<f64, EnvError> {
        self.space.validate(action)?;
        Ok(self.u_bar[action.get(0)] * self.v_bar[action.get(1)])
    }

    fn sample_reward<R: Rng + ?Sized>(
        &self,
        action: &CompositeAction,
        rng: &mut R,
    ) -> Result<f64, EnvError> {
        let p = self.exact_mean(action)?;
        Ok(if rng.random::<f64>() < p { 1.0 } else { 0.0 })
    }

    fn optimal_mean(&self) -> f64 {
        self.optimal
    }
}
