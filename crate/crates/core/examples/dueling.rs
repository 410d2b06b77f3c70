//! DBTEA against sparring UCB1 on a utility-based dueling bandit where the
//! best arm wins every duel with probability 0.7.
//!
//! ```text
//! cargo run --release --example dueling
//! ```

use factored_bandits::baselines::sparring_duel_run;
use factored_bandits::env::{DuelEnv, UtilityDuelEnv};
use factored_bandits::oracle::duel_gaps;
use factored_bandits::{dbtea_run, DbTea};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let env = UtilityDuelEnv::uniform_gap(6, 0.4).unwrap();
    println!(
        "P(best beats other) = {:.2}, first-position gaps = {:?}",
        env.win_probability(env.best_arm(), 1).unwrap(),
        duel_gaps(&env).unwrap().gaps()[0]
    );

    // a few phases in detail
    let mut learner = DbTea::new(env.arms(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..3 {
        let phase = learner.phase(&env, &mut rng).unwrap();
        let duels: Vec<String> = phase
            .duels
            .iter()
            .map(|d| format!("{}{}{}", d.first, if d.win { ">" } else { "<" }, d.second))
            .collect();
        println!("t = {:>3}: {}", phase.start, duels.join(" "));
    }

    let horizon = 200_000;
    for seed in 0..3u64 {
        let db = dbtea_run(&env, horizon, seed, &mut ChaCha8Rng::seed_from_u64(100 + seed), 1.5).unwrap();
        let sp = sparring_duel_run(&env, horizon, &mut ChaCha8Rng::seed_from_u64(100 + seed), 1.5).unwrap();
        println!(
            "seed {seed}: regret at T = {horizon}: dbtea {:>8.1}   sparring_duel {:>8.1}",
            db.cum_regret(),
            sp.cum_regret()
        );
    }
}
