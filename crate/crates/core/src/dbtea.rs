//! Dueling Bandit TEA: a single [`Tem`] drives both positions of every duel.
//!
//! Each phase the active set `A_s` is laid out twice: the first positions come
//! from the TEM schedule, the second positions are an independent uniformly
//! random permutation of `A_s`. Only the first position's win indicator is fed
//! back to the TEM.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::rate;
use crate::env::DuelEnv;
use crate::ledger::RegretLedger;
use crate::tea::{learner_stream, LearnerError};
use crate::tem::Tem;

/// Dueling pseudo-regret of one duel `(a, b)`:
/// `(u* - u(a)) / 2 + (u* - u(b)) / 2`.
pub fn dueling_regret_step(utilities: &[f64], a: usize, b: usize) -> f64 {
    let best = utilities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (best - utilities[a]) / 2.0 + (best - utilities[b]) / 2.0
}

/// One duel: `win` is true when `first` beat `second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DuelOutcome {
    pub first: usize,
    pub second: usize,
    pub win: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DuelPhase {
    pub start: u64,
    /// `A_s`, sorted.
    pub active: Vec<usize>,
    pub duels: Vec<DuelOutcome>,
}

#[derive(Debug, Clone)]
pub struct DbTea {
    tem: Tem,
    second_rng: ChaCha8Rng,
    t: u64,
    phases: u64,
}

impl DbTea {
    /// The TEM schedules from stream 0 of `seed`, second positions are drawn
    /// from stream 1.
    pub fn new(arms: usize, seed: u64) -> Result<Self, LearnerError> {
        Ok(Self {
            tem: Tem::new(arms, learner_stream(seed, 0))?,
            second_rng: learner_stream(seed, 1),
            t: 1,
            phases: 0,
        })
    }

    pub fn tem(&self) -> &Tem {
        &self.tem
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn phases(&self) -> u64 {
        self.phases
    }

    /// Runs one phase at the anytime confidence level `1 / f(t)`.
    pub fn phase<E, R>(&mut self, env: &E, env_rng: &mut R) -> Result<DuelPhase, LearnerError>
    where
        E: DuelEnv,
        R: Rng + ?Sized,
    {
        self.phase_with_confidence(rate(self.t as f64), env, env_rng)
    }

    /// Runs one phase with an explicit `delta_inv` for the active-set
    /// computation.
    pub fn phase_with_confidence<E, R>(
        &mut self,
        delta_inv: f64,
        env: &E,
        env_rng: &mut R,
    ) -> Result<DuelPhase, LearnerError>
    where
        E: DuelEnv,
        R: Rng + ?Sized,
    {
        let active = self.tem.active_set(delta_inv).to_vec();
        let firsts = self.tem.schedule_next(active.len())?.to_vec();
        let mut seconds = active.clone();
        seconds.shuffle(&mut self.second_rng);

        let mut duels = Vec::with_capacity(active.len());
        let mut rewards = Vec::with_capacity(active.len());
        for (&first, &second) in firsts.iter().zip(&seconds) {
            let win = env.sample_duel(first, second, env_rng)?;
            rewards.push(if win { 1.0 } else { 0.0 });
            duels.push(DuelOutcome { first, second, win });
        }
        self.tem.feedback(&rewards)?;

        let start = self.t;
        self.t += active.len() as u64;
        self.phases += 1;
        Ok(DuelPhase {
            start,
            active,
            duels,
        })
    }
}

/// Plays DBTEA until `horizon` duels are recorded.
pub fn dbtea_run<E: DuelEnv>(
    env: &E,
    horizon: u64,
    seed: u64,
    env_rng: &mut ChaCha8Rng,
    checkpoint_ratio: f64,
) -> Result<RegretLedger, LearnerError> {
    let mut learner = DbTea::new(env.arms(), seed)?;
    let mut ledger = RegretLedger::new(checkpoint_ratio);
    while ledger.t() < horizon {
        let phase = learner.phase(env, env_rng)?;
        for duel in phase.duels.iter().take((horizon - ledger.t()) as usize) {
            ledger.record_step(env.duel_regret(duel.first, duel.second)?);
        }
    }
    ledger.finish();
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::UtilityDuelEnv;
    use rand::SeedableRng;

    #[test]
    fn regret_step_examples() {
        let u = [0.4, 0.0, 0.0];
        assert_eq!(dueling_regret_step(&u, 0, 0), 0.0);
        assert_eq!(dueling_regret_step(&u, 1, 2), 0.4);
        assert!((dueling_regret_step(&u, 0, 1) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn each_active_arm_once_per_position() {
        let env = UtilityDuelEnv::new(vec![0.4, 0.0, 0.1, 0.2, 0.3]).unwrap();
        let mut learner = DbTea::new(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let phase = learner.phase(&env, &mut rng).unwrap();
        assert_eq!(phase.active.len(), 5);
        let mut firsts: Vec<usize> = phase.duels.iter().map(|d| d.first).collect();
        let mut seconds: Vec<usize> = phase.duels.iter().map(|d| d.second).collect();
        firsts.sort();
        seconds.sort();
        assert_eq!(firsts, phase.active);
        assert_eq!(seconds, phase.active);
        assert_eq!(learner.t(), 6);
    }

    #[test]
    fn single_arm_duels_itself() {
        let env = UtilityDuelEnv::new(vec![0.3]).unwrap();
        let mut learner = DbTea::new(1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut wins = 0;
        let n = 20_000;
        for _ in 0..n {
            let phase = learner.phase(&env, &mut rng).unwrap();
            assert_eq!(phase.duels.len(), 1);
            let d = phase.duels[0];
            assert_eq!((d.first, d.second), (0, 0));
            wins += d.win as usize;
        }
        let rate = wins as f64 / n as f64;
        assert!((rate - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt(), "{rate}");
    }

    #[test]
    fn optimal_self_duel_costs_nothing() {
        let env = UtilityDuelEnv::new(vec![0.0, 0.4]).unwrap();
        assert_eq!(env.duel_regret(1, 1).unwrap(), 0.0);
    }

    #[test]
    fn run_is_deterministic_and_truncated() {
        let env = UtilityDuelEnv::uniform_gap(8, 0.4).unwrap();
        let a = dbtea_run(&env, 10_007, 5, &mut ChaCha8Rng::seed_from_u64(6), 1.1).unwrap();
        let b = dbtea_run(&env, 10_007, 5, &mut ChaCha8Rng::seed_from_u64(6), 1.1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.t(), 10_007);
        assert_eq!(a.checkpoints().last().unwrap().t, 10_007);
    }
}
