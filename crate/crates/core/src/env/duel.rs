use super::{unique_argmax, DuelEnv, EnvError};

/// Linear link `nu(x) = (1 + x) / 2`.
pub fn linear_link(x: f64) -> f64 {
    (1.0 + x) / 2.0
}

/// Utility-based dueling environment: `P[a beats b] = nu(u(a) - u(b))`.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityDuelEnv {
    utilities: Vec<f64>,
    best: usize,
}

impl UtilityDuelEnv {
    pub fn new(utilities: Vec<f64>) -> Result<Self, EnvError> {
        if utilities.iter().any(|u| !u.is_finite()) {
            return Err(EnvError::Invalid("non-finite utility".into()));
        }
        let best = unique_argmax(&utilities).ok_or(EnvError::NoUniqueBest(0))?;
        let lo = utilities.iter().copied().fold(f64::INFINITY, f64::min);
        if utilities[best] - lo > 1.0 {
            return Err(EnvError::Invalid(format!(
                "utility spread {} exceeds 1, win probabilities leave [0, 1]",
                utilities[best] - lo
            )));
        }
        Ok(Self { utilities, best })
    }

    /// One best arm with utility `gap` above `arms - 1` identical arms at 0.
    pub fn uniform_gap(arms: usize, gap: f64) -> Result<Self, EnvError> {
        let mut utilities = vec![0.0; arms];
        if let Some(first) = utilities.first_mut() {
            *first = gap;
        }
        Self::new(utilities)
    }

    pub fn utilities(&self) -> &[f64] {
        &self.utilities
    }

    pub fn best_arm(&self) -> usize {
        self.best
    }

    fn check(&self, arm: usize) -> Result<(), EnvError> {
        if arm < self.utilities.len() {
            Ok(())
        } else {
            Err(EnvError::ArmOutOfRange {
                arm,
                arms: self.utilities.len(),
            })
        }
    }
}

impl DuelEnv for UtilityDuelEnv {
    fn arms(&self) -> usize {
        self.utilities.len()
    }

    fn win_probability(&self, first: usize, second: usize) -> Result<f64, EnvError> {
        self.check(first)?;
        self.check(second)?;
        Ok(linear_link(self.utilities[first] - self.utilities[second]))
    }

    fn duel_regret(&self, first: usize, second: usize) -> Result<f64, EnvError> {
        self.check(first)?;
        self.check(second)?;
        Ok(crate::dbtea::dueling_regret_step(&self.utilities, first, second))
    }
}
