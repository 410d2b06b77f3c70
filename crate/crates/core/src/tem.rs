//! Temporary Elimination Module.
//!
//! A TEM runs on one atomic arm set. It keeps, for every ordered pair of arms,
//! the accumulated reward-difference mass `D[i][j]` and the effective number of
//! paired samples `N[i][j]`. Each phase it
//!
//! 1. computes the active set `K*` of arms whose lower confidence bound on the
//!    best competitor's advantage is non-positive ([`Tem::active_set`]),
//! 2. lays out the phase so every active arm is played once and the remaining
//!    slots are filled round-robin from the persistent set `B`
//!    ([`Tem::schedule_next`]),
//! 3. folds the observed rewards into `D` and `N` using per-arm phase means
//!    ([`Tem::feedback`]).
//!
//! Arms outside `K*` are only *temporarily* eliminated: their statistics are
//! frozen while the confidence level `1 / f(t)` keeps tightening, so their LCB
//! eventually drops back to zero and they are re-examined.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::confidence_radius;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemError {
    #[error("a TEM needs at least one arm")]
    ZeroArms,
    #[error("schedule requested before the first active-set computation")]
    NoActiveSet,
    #[error("{slots} slots cannot hold {active} active arms")]
    SlotsTooFew { slots: usize, active: usize },
    #[error("feedback requires a scheduled phase")]
    NoSchedule,
    #[error("phase has {expected} scheduled slots but {got} rewards were given")]
    IncompleteFeedback { expected: usize, got: usize },
    #[error("invalid pair statistics: {0}")]
    InvalidStatistics(String),
}

/// Per-arm reward sums and play counts of one phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFeedback {
    pub sums: Vec<f64>,
    pub counts: Vec<u64>,
}

impl PhaseFeedback {
    pub fn aggregate(arms: usize, schedule: &[usize], rewards: &[f64]) -> Self {
        let mut sums = vec![0.0; arms];
        let mut counts = vec![0; arms];
        for (&arm, &r) in schedule.iter().zip(rewards) {
            sums[arm] += r;
            counts[arm] += 1;
        }
        Self { sums, counts }
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.sums[arm] / self.counts[arm] as f64
    }
}

#[derive(Debug, Clone)]
pub struct Tem {
    arms: usize,
    counts: Vec<u64>,
    diffs: Vec<f64>,
    active: Option<Vec<usize>>,
    persistent: Vec<usize>,
    schedule: Vec<usize>,
    rng: ChaCha8Rng,
}

impl Tem {
    /// Fresh module over `arms` atomic arms; `rng` drives the schedule layout.
    pub fn new(arms: usize, rng: ChaCha8Rng) -> Result<Self, TemError> {
        if arms == 0 {
            return Err(TemError::ZeroArms);
        }
        Ok(Self {
            arms,
            counts: vec![0; arms * arms],
            diffs: vec![0.0; arms * arms],
            active: None,
            persistent: (0..arms).collect(),
            schedule: Vec::new(),
            rng,
        })
    }

    /// Replaces the pair statistics, row-major `arms x arms`. `counts` must be
    /// symmetric and `diffs` antisymmetric with zero diagonals.
    pub fn with_statistics(mut self, counts: Vec<u64>, diffs: Vec<f64>) -> Result<Self, TemError> {
        let k = self.arms;
        if counts.len() != k * k || diffs.len() != k * k {
            return Err(TemError::InvalidStatistics(format!("expected {} entries", k * k)));
        }
        for i in 0..k {
            for j in 0..k {
                if counts[i * k + j] != counts[j * k + i] || diffs[i * k + j] != -diffs[j * k + i] {
                    return Err(TemError::InvalidStatistics(format!(
                        "pair ({i}, {j}) breaks symmetry"
                    )));
                }
            }
            if counts[i * k + i] != 0 {
                return Err(TemError::InvalidStatistics(format!("non-zero diagonal at {i}")));
            }
        }
        self.counts = counts;
        self.diffs = diffs;
        Ok(self)
    }

    pub fn arms(&self) -> usize {
        self.arms
    }

    /// `N[i][j]`
    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.arms + j]
    }

    /// `D[i][j]`
    pub fn diff(&self, i: usize, j: usize) -> f64 {
        self.diffs[i * self.arms + j]
    }

    /// Active set from the most recent [`Tem::active_set`] call.
    pub fn active(&self) -> Option<&[usize]> {
        self.active.as_deref()
    }

    pub fn persistent(&self) -> &[usize] {
        &self.persistent
    }

    /// Arm assigned to each slot of the current phase, empty between phases.
    pub fn schedule(&self) -> &[usize] {
        &self.schedule
    }

    /// Lower confidence bound on how much the best competitor beats `arm`:
    /// `max_{j != arm} D[j][arm] / N[j][arm] - radius(delta_inv, N[j][arm])`.
    ///
    /// Pairs without samples are skipped; with no usable competitor the bound
    /// is `-inf` and the arm counts as active.
    pub fn lcb_gap(&self, arm: usize, delta_inv: f64) -> f64 {
        let k = self.arms;
        (0..k)
            .filter(|&j| j != arm)
            .filter_map(|j| {
                let n = self.counts[j * k + arm];
                (n > 0).then(|| self.diffs[j * k + arm] / n as f64 - confidence_radius(delta_inv, n, k))
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Computes `K*` at confidence `1 / delta_inv` and updates `B`.
    pub fn active_set(&mut self, delta_inv: f64) -> &[usize] {
        let k = self.arms;
        let unexplored = k >= 2
            && (0..k).any(|i| (0..k).any(|j| i != j && self.counts[i * k + j] == 0));
        let active = if unexplored {
            (0..k).collect()
        } else {
            let mut active: Vec<usize> = (0..k).filter(|&i| self.lcb_gap(i, delta_inv) <= 0.0).collect();
            if active.is_empty() {
                active = (0..k).collect();
            }
            self.persistent.retain(|b| active.contains(b));
            if self.persistent.is_empty() {
                self.persistent = active.clone();
            }
            active
        };
        self.active.insert(active)
    }

    /// Lays out a phase of `slots` plays: each active arm once in a uniformly
    /// random slot, then repeated sweeps over `B` into the remaining slots.
    pub fn schedule_next(&mut self, slots: usize) -> Result<&[usize], TemError> {
        let active = self.active.as_ref().ok_or(TemError::NoActiveSet)?;
        if slots < active.len() {
            return Err(TemError::SlotsTooFew {
                slots,
                active: active.len(),
            });
        }
        // Filling a random permutation of the slots in order is the same as
        // picking a uniformly random unassigned slot for every placement.
        let mut order: Vec<usize> = (0..slots).collect();
        order.shuffle(&mut self.rng);
        let fill = self.persistent.iter().cycle();
        let mut schedule = vec![0; slots];
        for (&slot, &arm) in order.iter().zip(active.iter().chain(fill)) {
            schedule[slot] = arm;
        }
        self.schedule = schedule;
        Ok(&self.schedule)
    }

    /// Folds one reward per scheduled slot into the pair statistics of the
    /// active arms and closes the phase.
    pub fn feedback(&mut self, rewards: &[f64]) -> Result<PhaseFeedback, TemError> {
        if self.schedule.is_empty() {
            return Err(TemError::NoSchedule);
        }
        if rewards.len() != self.schedule.len() {
            return Err(TemError::IncompleteFeedback {
                expected: self.schedule.len(),
                got: rewards.len(),
            });
        }
        let phase = PhaseFeedback::aggregate(self.arms, &self.schedule, rewards);
        let active = self.active.as_ref().ok_or(TemError::NoActiveSet)?;
        let k = self.arms;
        for (pos, &i) in active.iter().enumerate() {
            assert!(phase.counts[i] >= 1, "active arm {i} was not played this phase");
            for &j in &active[pos + 1..] {
                let m = phase.counts[i].min(phase.counts[j]);
                let step = m as f64 * (phase.mean(i) - phase.mean(j));
                let d = self.diffs[i * k + j] + step;
                self.diffs[i * k + j] = d;
                self.diffs[j * k + i] = -d;
                self.counts[i * k + j] += m;
                self.counts[j * k + i] += m;
            }
        }
        self.schedule.clear();
        Ok(phase)
    }
}
