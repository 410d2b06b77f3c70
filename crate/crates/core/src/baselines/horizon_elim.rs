//! Horizon-aware elimination with exponentially growing phases.
//!
//! Phase `p` gives every surviving atomic arm of every factor `2^p` plays; the
//! other coordinates of each play are drawn uniformly from their factors'
//! survivors. At the end of a phase arm `i` of factor `l` is dropped if
//!
//! ```text
//! max_j m_j - m_i > 2 * sqrt( ln(2 * T * sum_l K_l) / (2 * 2^p) )
//! ```
//!
//! where `m` are the within-phase means of the plays designated to factor `l`.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::env::FactoredEnv;
use crate::ledger::RegretLedger;
use crate::space::CompositeAction;
use crate::tea::{learner_stream, LearnerError};

#[derive(Debug, Clone)]
pub struct HorizonElim {
    survivors: Vec<Vec<usize>>,
    horizon: u64,
    log_term: f64,
    phase: u32,
    rng: ChaCha8Rng,
}

impl HorizonElim {
    pub fn new(sizes: &[usize], horizon: u64, seed: u64) -> Self {
        let total: usize = sizes.iter().sum();
        Self {
            survivors: sizes.iter().map(|&k| (0..k).collect()).collect(),
            horizon,
            log_term: (2.0 * horizon as f64 * total as f64).ln(),
            phase: 0,
            rng: learner_stream(seed, 0),
        }
    }

    pub fn survivors(&self) -> &[Vec<usize>] {
        &self.survivors
    }

    /// Number of completed phases.
    pub fn phases(&self) -> u32 {
        self.phase
    }

    /// Elimination threshold for a phase with `per_arm` plays per arm.
    pub fn threshold(&self, per_arm: u64) -> f64 {
        2.0 * (self.log_term / (2.0 * per_arm as f64)).sqrt()
    }

    /// Plays the next phase, recording into `ledger` until the horizon.
    /// Returns `false` once the horizon is reached.
    pub fn run_phase<E, R>(
        &mut self,
        env: &E,
        env_rng: &mut R,
        ledger: &mut RegretLedger,
    ) -> Result<bool, LearnerError>
    where
        E: FactoredEnv,
        R: Rng + ?Sized,
    {
        let per_arm = 1u64 << (self.phase + 1).min(62);
        let mut plays: Vec<(usize, usize)> = Vec::new();
        for (factor, arms) in self.survivors.iter().enumerate() {
            for &arm in arms {
                let remaining = self.horizon.saturating_sub(ledger.t()) as usize;
                let count = (per_arm as usize).min(remaining.max(1));
                plays.extend(std::iter::repeat_n((factor, arm), count));
            }
        }
        plays.shuffle(&mut self.rng);

        let mut sums: Vec<Vec<f64>> = self.survivors.iter().map(|s| vec![0.0; s.len()]).collect();
        for &(factor, arm) in &plays {
            if ledger.t() >= self.horizon {
                return Ok(false);
            }
            let action: CompositeAction = self
                .survivors
                .iter()
                .enumerate()
                .map(|(l, arms)| {
                    if l == factor {
                        arm
                    } else {
                        *arms.choose(&mut self.rng).expect("survivor sets are never empty")
                    }
                })
                .collect();
            let reward = env.sample_reward(&action, env_rng)?;
            ledger.record_step(env.instant_regret(&action)?);
            let pos = self.survivors[factor].binary_search(&arm).expect("arm survives");
            sums[factor][pos] += reward;
        }

        let threshold = self.threshold(per_arm);
        for (arms, sums) in self.survivors.iter_mut().zip(&sums) {
            let means: Vec<f64> = sums.iter().map(|s| s / per_arm as f64).collect();
            let best = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut keep = means.iter().map(|&m| best - m <= threshold);
            arms.retain(|_| keep.next().unwrap_or(true));
        }
        self.phase += 1;
        Ok(ledger.t() < self.horizon)
    }
}

pub fn horizon_elim_run<E: FactoredEnv>(
    env: &E,
    horizon: u64,
    seed: u64,
    env_rng: &mut ChaCha8Rng,
    checkpoint_ratio: f64,
) -> Result<RegretLedger, LearnerError> {
    let mut learner = HorizonElim::new(env.space().sizes(), horizon, seed);
    let mut ledger = RegretLedger::new(checkpoint_ratio);
    while learner.run_phase(env, env_rng, &mut ledger)? {}
    ledger.finish();
    Ok(ledger)
}
