//! Exhaustive gap tables and kappa for a few environments, including one
//! that is not uniformly identifiable.
//!
//! ```text
//! cargo run --example oracle
//! ```

use factored_bandits::env::{AdditiveGaussianEnv, FactoredEnv, Rank1Env, TabularEnv};
use factored_bandits::oracle::{compute_gaps, compute_kappa, OracleError};
use factored_bandits::FactoredActionSpace;

fn show<E: FactoredEnv>(name: &str, env: &E) {
    match compute_gaps(env) {
        Ok(table) => {
            let kappa = compute_kappa(env, &table).unwrap();
            println!("{name}: best {:?}, kappa {kappa:.4}", table.best());
            for (l, row) in table.gaps().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|g| format!("{g:.4}")).collect();
                println!("    factor {l}: [{}]", cells.join(", "));
            }
        }
        Err(e @ OracleError::NonIdentifiable { .. }) => println!("{name}: {e}"),
        Err(e) => panic!("{e}"),
    }
}

fn main() {
    show("rank-1", &Rank1Env::new(vec![0.9, 0.7, 0.3], vec![0.5, 0.3]).unwrap());
    show(
        "additive",
        &AdditiveGaussianEnv::new(0.2, vec![vec![0.0, 0.25, 0.5], vec![0.125, 0.0]]).unwrap(),
    );
    // an interaction term makes the regret exceed the gap sum
    let space = FactoredActionSpace::new(vec![2, 2]).unwrap();
    show(
        "interaction",
        &TabularEnv::from_fn(space.clone(), 1.0, |a| match a.coords() {
            [0, 0] => 0.8,
            [0, 1] => 0.6,
            [1, 0] => 0.7,
            _ => 0.1,
        })
        .unwrap(),
    );
    show(
        "tied",
        &TabularEnv::new(space, vec![0.5, 0.2, 0.5, 0.2], 1.0).unwrap(),
    );
}
