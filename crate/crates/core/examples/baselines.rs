//! TEA, factored sparring and horizon-aware elimination on the same additive
//! Gaussian problem and the same seeds.
//!
//! ```text
//! cargo run --release --example baselines
//! ```

use factored_bandits::baselines::{horizon_elim_run, sparring_run};
use factored_bandits::env::AdditiveGaussianEnv;
use factored_bandits::tea_run;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let env = AdditiveGaussianEnv::new(
        0.8,
        vec![vec![0.0, 0.6, 0.6, 0.6, 0.6], vec![0.0, 0.4, 0.5], vec![0.3, 0.0]],
    )
    .unwrap();
    let horizon = 300_000;
    let reps = 5u64;
    let mut totals = [0.0f64; 3];
    println!("{:>4} {:>12} {:>12} {:>14}", "rep", "tea", "sparring", "horizon_elim");
    for rep in 0..reps {
        let rng = || ChaCha8Rng::seed_from_u64(1000 + rep);
        let row = [
            tea_run(&env, horizon, rep, &mut rng(), 1.1).unwrap().cum_regret(),
            sparring_run(&env, horizon, &mut rng(), 1.1).unwrap().cum_regret(),
            horizon_elim_run(&env, horizon, rep, &mut rng(), 1.1).unwrap().cum_regret(),
        ];
        for (t, r) in totals.iter_mut().zip(row) {
            *t += r;
        }
        println!("{rep:>4} {:>12.1} {:>12.1} {:>14.1}", row[0], row[1], row[2]);
    }
    let mean = totals.map(|t| t / reps as f64);
    println!("mean {:>12.1} {:>12.1} {:>14.1}", mean[0], mean[1], mean[2]);
}
