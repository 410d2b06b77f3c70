//! Comparison learners that share the environment and ledger contracts of
//! TEA / DBTEA, so curves line up per seed.
//!
//! - [`sparring`]: one UCB1 learner per factor, each blind to the others.
//! - [`horizon_elim`]: horizon-aware elimination with exponentially growing
//!   phases of uniform play.
//! - [`sparring_duel`]: two UCB1 learners, one per duel position.

pub mod horizon_elim;
pub mod sparring;
pub mod sparring_duel;
mod ucb;

pub use horizon_elim::{horizon_elim_run, HorizonElim};
pub use sparring::{sparring_run, sparring_step};
pub use sparring_duel::{sparring_duel_run, sparring_duel_step};
pub use ucb::{Ucb1, UcbArmStats};
