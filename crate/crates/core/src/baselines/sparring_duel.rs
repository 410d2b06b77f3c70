use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Ucb1;
use crate::dbtea::DuelOutcome;
use crate::env::DuelEnv;
use crate::ledger::RegretLedger;
use crate::tea::LearnerError;

/// One duel between two independent UCB1 learners; the first records the win
/// indicator, the second its complement.
pub fn sparring_duel_step<E, R>(
    first: &mut Ucb1,
    second: &mut Ucb1,
    env: &E,
    t: u64,
    env_rng: &mut R,
) -> Result<DuelOutcome, LearnerError>
where
    E: DuelEnv,
    R: Rng + ?Sized,
{
    let a = first.select(t);
    let b = second.select(t);
    let win = env.sample_duel(a, b, env_rng)?;
    let w = if win { 1.0 } else { 0.0 };
    first.update(a, w);
    second.update(b, 1.0 - w);
    Ok(DuelOutcome {
        first: a,
        second: b,
        win,
    })
}

pub fn sparring_duel_run<E: DuelEnv>(
    env: &E,
    horizon: u64,
    env_rng: &mut ChaCha8Rng,
    checkpoint_ratio: f64,
) -> Result<RegretLedger, LearnerError> {
    let mut first = Ucb1::new(env.arms());
    let mut second = Ucb1::new(env.arms());
    let mut ledger = RegretLedger::new(checkpoint_ratio);
    for t in 1..=horizon {
        let duel = sparring_duel_step(&mut first, &mut second, env, t, env_rng)?;
        ledger.record_step(env.duel_regret(duel.first, duel.second)?);
    }
    ledger.finish();
    Ok(ledger)
}
