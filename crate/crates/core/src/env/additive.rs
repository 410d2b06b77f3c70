use rand::Rng;
use rand_distr::StandardNormal;

use super::{check_mean, EnvError, FactoredEnv};
use crate::space::{CompositeAction, FactoredActionSpace};

/// Additive environment `mu(a) = mu_star - sum_l gap_l(a_l)` with unit-variance
/// Gaussian noise.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveGaussianEnv {
    mu_star: f64,
    gaps: Vec<Vec<f64>>,
    space: FactoredActionSpace,
}

impl AdditiveGaussianEnv {
    pub fn new(mu_star: f64, gaps: Vec<Vec<f64>>) -> Result<Self, EnvError> {
        let space = FactoredActionSpace::new(gaps.iter().map(Vec::len).collect())?;
        let mut worst = 0.0;
        for (factor, row) in gaps.iter().enumerate() {
            if row.iter().any(|g| !g.is_finite() || *g < 0.0) {
                return Err(EnvError::Invalid(format!(
                    "factor {factor} has a negative or non-finite gap"
                )));
            }
            if row.iter().filter(|&&g| g == 0.0).count() != 1 {
                return Err(EnvError::NoUniqueBest(factor));
            }
            worst += row.iter().copied().fold(0.0, f64::max);
        }
        if !(-1.0..=1.0).contains(&mu_star) || mu_star - worst < -1.0 {
            return Err(EnvError::Invalid(format!(
                "means span [{}, {mu_star}], outside [-1, 1]",
                mu_star - worst
            )));
        }
        Ok(Self {
            mu_star,
            gaps,
            space,
        })
    }

    pub fn gaps(&self) -> &[Vec<f64>] {
        &self.gaps
    }

    pub fn mu_star(&self) -> f64 {
        self.mu_star
    }
}

impl FactoredEnv for AdditiveGaussianEnv {
    fn space(&self) -> &FactoredActionSpace {
        &self.space
    }

    fn exact_mean(&self, action: &CompositeAction) -> Result<f64, EnvError> {
        self.space.validate(action)?;
        let total: f64 = action
            .coords()
            .iter()
            .zip(&self.gaps)
            .map(|(&a, row)| row[a])
            .sum();
        let mean = self.mu_star - total;
        check_mean(action, mean)?;
        Ok(mean)
    }

    fn sample_reward<R: Rng + ?Sized>(
        &self,
        action: &CompositeAction,
        rng: &mut R,
    ) -> Result<f64, EnvError> {
        let noise: f64 = rng.sample(StandardNormal);
        Ok(self.exact_mean(action)? + noise)
    }

    fn optimal_mean(&self) -> f64 {
        self.mu_star
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn additive_mean() {
        let env = AdditiveGaussianEnv::new(0.0, vec![vec![0.0, 0.2], vec![0.3, 0.0]]).unwrap();
        assert_eq!(env.exact_mean(&vec![1, 0].into()).unwrap(), -0.5);
        assert_eq!(env.exact_mean(&vec![0, 1].into()).unwrap(), 0.0);
    }

    #[test]
    fn monte_carlo_mean() {
        let env = AdditiveGaussianEnv::new(0.5, vec![vec![0.0, 0.25, 0.5]]).unwrap();
        let action: CompositeAction = vec![1].into();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 1_000_000;
        let sum: f64 = (0..n)
            .map(|_| env.sample_reward(&action, &mut rng).unwrap())
            .sum();
        let mean = sum / n as f64;
        assert!((mean - 0.25).abs() < 4.0 / (n as f64).sqrt(), "{mean}");
    }

    #[test]
    fn validation() {
        assert_eq!(
            AdditiveGaussianEnv::new(0.0, vec![vec![0.0, 0.0]]),
            Err(EnvError::NoUniqueBest(0))
        );
        assert!(AdditiveGaussianEnv::new(0.0, vec![vec![0.0, 0.6], vec![0.0, 0.6]]).is_err());
        assert!(AdditiveGaussianEnv::new(1.2, vec![vec![0.0, 0.1]]).is_err());
        assert!(AdditiveGaussianEnv::new(0.0, vec![vec![0.0, -0.1]]).is_err());
    }
}
