//! Running pseudo-regret with checkpoints on a geometric time grid.

/// Default ratio of the checkpoint grid.
pub const DEFAULT_CHECKPOINT_RATIO: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub t: u64,
    pub cum_regret: f64,
}

/// Cumulative pseudo-regret of one run.
///
/// A checkpoint is appended at the first step `t` reaching the next grid point
/// `ratio^k`, starting from `t = 1`. [`RegretLedger::finish`] forces one more at
/// the final step.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretLedger {
    t: u64,
    cum_regret: f64,
    checkpoints: Vec<Checkpoint>,
    ratio: f64,
    next_grid: f64,
}

impl RegretLedger {
    pub fn new(ratio: f64) -> Self {
        assert!(ratio > 1.0, "checkpoint ratio must exceed 1, got {ratio}");
        Self {
            t: 0,
            cum_regret: 0.0,
            checkpoints: Vec::new(),
            ratio,
            next_grid: 1.0,
        }
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn cum_regret(&self) -> f64 {
        self.cum_regret
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn record_step(&mut self, instant_regret: f64) {
        self.t += 1;
        self.cum_regret += instant_regret;
        if self.t as f64 >= self.next_grid {
            self.push_checkpoint();
            while self.next_grid <= self.t as f64 {
                self.next_grid *= self.ratio;
            }
        }
    }

    /// Appends a checkpoint at the current step unless one is already there.
    pub fn finish(&mut self) {
        if self.t > 0 && self.checkpoints.last().map(|c| c.t) != Some(self.t) {
            self.push_checkpoint();
        }
    }

    fn push_checkpoint(&mut self) {
        self.checkpoints.push(Checkpoint {
            t: self.t,
            cum_regret: self.cum_regret,
        });
    }
}

impl Default for RegretLedger {
    fn default() -> Self {
        Self::new(DEFAULT_CHECKPOINT_RATIO)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_step() {
        let mut ledger = RegretLedger::default();
        ledger.record_step(0.5);
        assert_eq!(ledger.t(), 1);
        assert_eq!(ledger.cum_regret(), 0.5);
    }

    #[test]
    fn doubling_grid() {
        let mut ledger = RegretLedger::new(2.0);
        for _ in 0..20 {
            ledger.record_step(1.0);
        }
        let ts: Vec<u64> = ledger.checkpoints().iter().map(|c| c.t).collect();
        assert_eq!(ts, vec![1, 2, 4, 8, 16]);
        ledger.finish();
        assert_eq!(ledger.checkpoints().last().unwrap().t, 20);
        ledger.finish();
        assert_eq!(ledger.checkpoints().len(), 6);
    }

    #[test]
    fn zero_regret_stays_zero() {
        let mut ledger = RegretLedger::default();
        for _ in 0..100 {
            ledger.record_step(0.0);
        }
        assert_eq!(ledger.cum_regret(), 0.0);
    }

    #[test]
    fn default_grid_is_dense_early_and_strictly_increasing() {
        let mut ledger = RegretLedger::default();
        for _ in 0..100_000 {
            ledger.record_step(0.1);
        }
        ledger.finish();
        let ts: Vec<u64> = ledger.checkpoints().iter().map(|c| c.t).collect();
        assert_eq!(&ts[..5], &[1, 2, 3, 4, 5]);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*ts.last().unwrap(), 100_000);
        // ln(1e5)/ln(1.1) ~ 121 grid points
        assert!(ts.len() < 140, "{}", ts.len());
    }

    #[test]
    fn empty_finish_is_noop() {
        let mut ledger = RegretLedger::default();
        ledger.finish();
        assert!(ledger.checkpoints().is_empty());
    }
}
