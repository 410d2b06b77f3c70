//! Drives a single temporary elimination module by hand and prints its pair
//! statistics, lower confidence bounds and active sets as they evolve.
//!
//! ```text
//! cargo run --release --example tem_walkthrough
//! ```

use factored_bandits::bounds::{confidence_radius, rate};
use factored_bandits::env::{AdditiveGaussianEnv, FactoredEnv};
use factored_bandits::Tem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // arm 0 is best; arm 3 is barely worse, arm 1 much worse
    let env = AdditiveGaussianEnv::new(0.6, vec![vec![0.0, 0.9, 0.5, 0.15]]).unwrap();
    let arms = 4;
    let mut tem = Tem::new(arms, ChaCha8Rng::seed_from_u64(5)).unwrap();
    let mut env_rng = ChaCha8Rng::seed_from_u64(6);
    let mut t = 1u64;

    for phase in 1..=20_000u64 {
        let delta_inv = rate(t as f64);
        let active = tem.active_set(delta_inv).to_vec();
        let schedule = tem.schedule_next(active.len()).unwrap().to_vec();
        let rewards: Vec<f64> = schedule
            .iter()
            .map(|&a| env.sample_reward(&vec![a].into(), &mut env_rng).unwrap())
            .collect();
        tem.feedback(&rewards).unwrap();

        if phase.is_power_of_two() || phase == 20_000 {
            println!("phase {phase:>5}  t = {t:>6}  K* = {active:?}  B = {:?}", tem.persistent());
            for i in 1..arms {
                let n = tem.count(0, i).max(1);
                println!(
                    "    arm {i}: D[0][{i}]/N = {:+.3}  radius = {:.3}  LCB gap = {:+.3}",
                    tem.diff(0, i) / n as f64,
                    confidence_radius(delta_inv, n, arms),
                    tem.lcb_gap(i, delta_inv)
                );
            }
        }
        t += schedule.len() as u64;
    }
}
