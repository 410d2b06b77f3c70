use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Ucb1;
use crate::env::FactoredEnv;
use crate::ledger::RegretLedger;
use crate::space::CompositeAction;
use crate::tea::LearnerError;

/// One step of factored sparring: each factor's UCB1 picks its atomic arm
/// without seeing the others, and the joint reward updates all of them.
pub fn sparring_step<E, R>(
    learners: &mut [Ucb1],
    env: &E,
    t: u64,
    env_rng: &mut R,
) -> Result<(CompositeAction, f64), LearnerError>
where
    E: FactoredEnv,
    R: Rng + ?Sized,
{
    let action: CompositeAction = learners.iter().map(|l| l.select(t)).collect();
    let reward = env.sample_reward(&action, env_rng)?;
    for (learner, &arm) in learners.iter_mut().zip(action.coords()) {
        learner.update(arm, reward);
    }
    Ok((action, reward))
}

pub fn sparring_run<E: FactoredEnv>(
    env: &E,
    horizon: u64,
    env_rng: &mut ChaCha8Rng,
    checkpoint_ratio: f64,
) -> Result<RegretLedger, LearnerError> {
    let mut learners: Vec<Ucb1> = env.space().sizes().iter().map(|&k| Ucb1::new(k)).collect();
    let mut ledger = RegretLedger::new(checkpoint_ratio);
    for t in 1..=horizon {
        let (action, _) = sparring_step(&mut learners, env, t, env_rng)?;
        ledger.record_step(env.instant_regret(&action)?);
    }
    ledger.finish();
    Ok(ledger)
}
