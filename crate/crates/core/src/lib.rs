//! Temporary elimination learners for factored bandits and utility-based
//! dueling bandits.
//!
//! A factored bandit plays a tuple of atomic arms, one per factor, and sees a
//! single scalar reward. [`Tea`] runs one [`Tem`] (temporary elimination
//! module) per factor in synchronized phases; [`DbTea`] reuses a single TEM
//! to pick the first arm of each duel in a dueling bandit. Both are anytime:
//! neither needs the horizon.
//!
//! Around the learners the crate provides synthetic environments
//! ([`env`]), comparison baselines ([`baselines`]), exhaustive gap and
//! `kappa` oracles ([`oracle`]), Monte Carlo checks of the tail bounds the
//! learners depend on ([`concentration`]) and a seeded experiment runner
//! with CSV output ([`harness`]).
//!
//! ```
//! use factored_bandits::env::AdditiveGaussianEnv;
//! use factored_bandits::tea_run;
//! use rand::SeedableRng;
//!
//! let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.5, 0.5], vec![0.0, 0.3]]).unwrap();
//! let mut env_rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let ledger = tea_run(&env, 10_000, 7, &mut env_rng, 1.1).unwrap();
//! assert_eq!(ledger.t(), 10_000);
//! ```

pub mod baselines;
pub mod bounds;
pub mod concentration;
pub mod dbtea;
pub mod env;
pub mod harness;
pub mod ledger;
pub mod oracle;
pub mod space;
pub mod tea;
pub mod tem;

pub use dbtea::{dbtea_run, dueling_regret_step, DbTea, DuelOutcome, DuelPhase};
pub use env::{DuelEnv, EnvError, FactoredEnv};
pub use ledger::{Checkpoint, RegretLedger};
pub use space::{CompositeAction, FactoredActionSpace, SpaceError};
pub use tea::{tea_run, LearnerError, Tea, TeaPhase};
pub use tem::{PhaseFeedback, Tem, TemError};
