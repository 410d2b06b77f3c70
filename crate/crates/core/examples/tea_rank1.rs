//! TEA on a 4x4 rank-1 Bernoulli matrix.
//!
//! ```text
//! cargo run --release --example tea_rank1
//! ```

use factored_bandits::env::{FactoredEnv, Rank1Env};
use factored_bandits::{RegretLedger, Tea};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let env = Rank1Env::new(vec![0.3, 0.95, 0.6, 0.5], vec![0.9, 0.4, 0.5, 0.2]).expect("valid environment");
    let horizon = 200_000;
    let mut tea = Tea::new(env.space(), 2024);
    let mut env_rng = ChaCha8Rng::seed_from_u64(1);
    let mut ledger = RegretLedger::new(2.0);

    while ledger.t() < horizon {
        let phase = tea.phase(&env, &mut env_rng).expect("spaces match");
        for action in phase.actions.iter().take((horizon - ledger.t()) as usize) {
            ledger.record_step(env.instant_regret(action).unwrap());
        }
    }
    ledger.finish();

    println!("{:>8}  {:>12}", "t", "cum regret");
    for c in ledger.checkpoints() {
        println!("{:>8}  {:>12.1}", c.t, c.cum_regret);
    }
    println!("\nphases played: {}", tea.phases());
    for (l, tem) in tea.tems().iter().enumerate() {
        println!(
            "factor {l}: active set {:?}, persistent set {:?}",
            tem.active().unwrap_or(&[]),
            tem.persistent()
        );
    }
}
