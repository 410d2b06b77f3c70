//! Factored-bandit Temporary Elimination Algorithm: one [`Tem`] per factor,
//! run in synchronized phases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::rate;
use crate::env::{EnvError, FactoredEnv};
use crate::ledger::RegretLedger;
use crate::space::{CompositeAction, FactoredActionSpace};
use crate::tem::{Tem, TemError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LearnerError {
    #[error(transparent)]
    Tem(#[from] TemError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("environment space {env:?} does not match learner space {learner:?}")]
    SpaceMismatch { env: Vec<usize>, learner: Vec<usize> },
}

/// RNG stream for one component of a learner seeded with `seed`.
pub(crate) fn learner_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// What happened in one phase.
#[derive(Debug, Clone, PartialEq)]
pub struct TeaPhase {
    /// Timestep of the first play.
    pub start: u64,
    pub actions: Vec<CompositeAction>,
    pub rewards: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Tea {
    tems: Vec<Tem>,
    t: u64,
    phase: u64,
}

impl Tea {
    /// The TEM of factor `l` schedules from stream `l` of `seed`.
    pub fn new(space: &FactoredActionSpace, seed: u64) -> Self {
        let tems = space
            .sizes()
            .iter()
            .enumerate()
            .map(|(l, &k)| Tem::new(k, learner_stream(seed, l as u64)).expect("space sizes are positive"))
            .collect();
        Self {
            tems,
            t: 1,
            phase: 0,
        }
    }

    pub fn tems(&self) -> &[Tem] {
        &self.tems
    }

    /// Timestep of the next play.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of completed phases.
    pub fn phases(&self) -> u64 {
        self.phase
    }

    /// Runs one phase: every TEM computes its active set at `1 / f(t)`, the
    /// phase length is the largest active set, each TEM schedules that many
    /// slots, the joint actions are played and every TEM sees all rewards.
    pub fn phase<E, R>(&mut self, env: &E, env_rng: &mut R) -> Result<TeaPhase, LearnerError>
    where
        E: FactoredEnv,
        R: Rng + ?Sized,
    {
        let sizes: Vec<usize> = self.tems.iter().map(Tem::arms).collect();
        if env.space().sizes() != sizes.as_slice() {
            return Err(LearnerError::SpaceMismatch {
                env: env.space().sizes().to_vec(),
                learner: sizes,
            });
        }
        let delta_inv = rate(self.t as f64);
        let length = self
            .tems
            .iter_mut()
            .map(|tem| tem.active_set(delta_inv).len())
            .max()
            .unwrap_or(1);
        for tem in &mut self.tems {
            tem.schedule_next(length)?;
        }
        let mut actions = Vec::with_capacity(length);
        let mut rewards = Vec::with_capacity(length);
        for slot in 0..length {
            let action: CompositeAction = self.tems.iter().map(|tem| tem.schedule()[slot]).collect();
            rewards.push(env.sample_reward(&action, env_rng)?);
            actions.push(action);
        }
        for tem in &mut self.tems {
            tem.feedback(&rewards)?;
        }
        let start = self.t;
        self.t += length as u64;
        self.phase += 1;
        Ok(TeaPhase {
            start,
            actions,
            rewards,
        })
    }
}

/// Plays TEA on `env` until `horizon` steps are recorded. The last phase may
/// run past the horizon; plays beyond it are not recorded.
pub fn tea_run<E: FactoredEnv>(
    env: &E,
    horizon: u64,
    seed: u64,
    env_rng: &mut ChaCha8Rng,
    checkpoint_ratio: f64,
) -> Result<RegretLedger, LearnerError> {
    let mut tea = Tea::new(env.space(), seed);
    let mut ledger = RegretLedger::new(checkpoint_ratio);
    while ledger.t() < horizon {
        let phase = tea.phase(env, env_rng)?;
        for action in phase.actions.iter().take((horizon - ledger.t()) as usize) {
            ledger.record_step(env.instant_regret(action)?);
        }
    }
    ledger.finish();
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{AdditiveGaussianEnv, TabularEnv};

    fn env_rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn phase_length_is_largest_active_set() {
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.3, 0.3], vec![0.0, 0.3]]).unwrap();
        let mut tea = Tea::new(env.space(), 1);
        let phase = tea.phase(&env, &mut env_rng(2)).unwrap();
        assert_eq!(phase.actions.len(), 3);
        assert_eq!(phase.start, 1);
        assert_eq!(tea.t(), 4);
        // first factor plays each arm once, the 2-arm factor fills a third slot from B
        let mut first: Vec<usize> = phase.actions.iter().map(|a| a.get(0)).collect();
        first.sort();
        assert_eq!(first, vec![0, 1, 2]);
        let ones = phase.actions.iter().filter(|a| a.get(1) == 1).count();
        assert!(ones == 1 || ones == 2);
    }

    #[test]
    fn singleton_factors_play_one_action_per_phase() {
        let space = FactoredActionSpace::new(vec![1, 1, 1]).unwrap();
        let env = TabularEnv::new(space, vec![0.2], 1.0).unwrap();
        let mut tea = Tea::new(env.space(), 5);
        for s in 0..10 {
            let phase = tea.phase(&env, &mut env_rng(s)).unwrap();
            assert_eq!(phase.actions, vec![CompositeAction::new(vec![0, 0, 0])]);
        }
        assert_eq!(tea.t(), 11);
    }

    #[test]
    fn single_factor_matches_direct_tem_driver() {
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.5, 0.5, 0.5]]).unwrap();
        let seed = 77;
        let mut tea = Tea::new(env.space(), seed);
        let mut rng_a = env_rng(3);
        let mut tea_pulls = Vec::new();
        for _ in 0..2000 {
            let phase = tea.phase(&env, &mut rng_a).unwrap();
            tea_pulls.extend(phase.actions.iter().map(|a| a.get(0)));
        }

        let mut tem = Tem::new(4, learner_stream(seed, 0)).unwrap();
        let mut rng_b = env_rng(3);
        let mut t = 1u64;
        let mut direct_pulls = Vec::new();
        while direct_pulls.len() < tea_pulls.len() {
            let m = tem.active_set(rate(t as f64)).len();
            let schedule = tem.schedule_next(m).unwrap().to_vec();
            let rewards: Vec<f64> = schedule
                .iter()
                .map(|&a| env.sample_reward(&vec![a].into(), &mut rng_b).unwrap())
                .collect();
            tem.feedback(&rewards).unwrap();
            direct_pulls.extend(schedule);
            t += m as u64;
        }
        assert_eq!(tea_pulls, direct_pulls);
    }

    #[test]
    fn space_mismatch() {
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.5]]).unwrap();
        let other = FactoredActionSpace::new(vec![3]).unwrap();
        let mut tea = Tea::new(&other, 0);
        assert!(matches!(
            tea.phase(&env, &mut env_rng(0)),
            Err(LearnerError::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn regret_only_from_gapped_factor() {
        // factor 1 has identical arms in the regret sense only when it is a singleton
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.4], vec![0.0]]).unwrap();
        let mut rng = env_rng(9);
        let ledger = tea_run(&env, 5000, 4, &mut rng, 1.1).unwrap();
        let mut tea = Tea::new(env.space(), 4);
        let mut rng = env_rng(9);
        let mut expected = 0.0;
        let mut played = 0;
        while played < 5000 {
            for a in tea.phase(&env, &mut rng).unwrap().actions {
                if played < 5000 {
                    expected += if a.get(0) == 1 { 0.4 } else { 0.0 };
                    played += 1;
                }
            }
        }
        assert!((ledger.cum_regret() - expected).abs() < 1e-9);
        assert_eq!(ledger.t(), 5000);
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.2, 0.3], vec![0.0, 0.1]]).unwrap();
        let a = tea_run(&env, 20_000, 1, &mut env_rng(2), 1.1).unwrap();
        let b = tea_run(&env, 20_000, 1, &mut env_rng(2), 1.1).unwrap();
        assert_eq!(a, b);
    }
}
