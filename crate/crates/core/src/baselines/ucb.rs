/// Play count and running mean of one arm.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct UcbArmStats {
    pub n: u64,
    pub mean: f64,
}

/// UCB1 with index `mean + sqrt(2 ln t / n)`. Unplayed arms go first and ties
/// break towards the lowest index.
#[derive(Debug, Clone, PartialEq)]
pub struct Ucb1 {
    arms: Vec<UcbArmStats>,
}

impl Ucb1 {
    pub fn new(arms: usize) -> Self {
        assert!(arms > 0, "UCB1 needs at least one arm");
        Self {
            arms: vec![UcbArmStats::default(); arms],
        }
    }

    pub fn stats(&self) -> &[UcbArmStats] {
        &self.arms
    }

    pub fn select(&self, t: u64) -> usize {
        if let Some(unplayed) = self.arms.iter().position(|a| a.n == 0) {
            return unplayed;
        }
        let log_t = (t.max(1) as f64).ln();
        let mut best = 0;
        let mut best_index = f64::NEG_INFINITY;
        for (i, arm) in self.arms.iter().enumerate() {
            let index = arm.mean + (2.0 * log_t / arm.n as f64).sqrt();
            if index > best_index {
                best_index = index;
                best = i;
            }
        }
        best
    }

    pub fn update(&mut self, arm: usize, reward: f64) {
        let stats = &mut self.arms[arm];
        stats.n += 1;
        stats.mean += (reward - stats.mean) / stats.n as f64;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unplayed_first_then_index() {
        let mut ucb = Ucb1::new(3);
        for (t, expected) in [(1, 0), (2, 1), (3, 2)] {
            let arm = ucb.select(t);
            assert_eq!(arm, expected);
            ucb.update(arm, if arm == 1 { 1.0 } else { 0.0 });
        }
        assert_eq!(ucb.select(4), 1);
        assert_eq!(ucb.stats()[1], UcbArmStats { n: 1, mean: 1.0 });
    }

    #[test]
    fn ties_break_low() {
        let mut ucb = Ucb1::new(2);
        ucb.update(0, 0.5);
        ucb.update(1, 0.5);
        assert_eq!(ucb.select(10), 0);
    }
}
