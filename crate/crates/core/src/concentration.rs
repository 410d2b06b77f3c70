//! Monte Carlo checks of the sub-Gaussian tail bounds the learners rely on.
//!
//! Each tail check simulates `trials` independent experiments, counts how
//! often the bound is exceeded and compares the violation rate with the
//! nominal `delta`. A check fails only when violations exceed
//! `delta + 3 * sqrt(delta * (1 - delta) / trials)`; a conservative bound is
//! never a failure.
//!
//! Trial `i` of a check draws from stream `i` of a `ChaCha8Rng` seeded with
//! the check's seed, so reports do not depend on the thread count.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::rate;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConcentrationError {
    #[error("index sets of sizes {m} and {k} do not fit into {n} means")]
    SetsTooLarge { m: usize, k: usize, n: usize },
    #[error("index sets must be non-empty")]
    EmptySet,
    #[error("delta must lie in (0, 1], got {0}")]
    BadDelta(f64),
}

/// Outcome of one Monte Carlo tail check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailCheckReport {
    pub name: String,
    pub trials: u64,
    pub violations: u64,
    pub delta: f64,
    pub passed: bool,
}

impl TailCheckReport {
    pub fn new(name: impl Into<String>, trials: u64, violations: u64, delta: f64) -> Self {
        assert!(violations <= trials);
        let passed = (violations as f64) <= tolerance(delta, trials) * trials as f64;
        Self {
            name: name.into(),
            trials,
            violations,
            delta,
            passed,
        }
    }

    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.violations as f64 / self.trials as f64
        }
    }

    /// Largest violation rate still accepted.
    pub fn tolerance(&self) -> f64 {
        tolerance(self.delta, self.trials)
    }
}

/// `delta` plus three binomial standard errors.
pub fn tolerance(delta: f64, trials: u64) -> f64 {
    if trials == 0 {
        return 1.0;
    }
    delta + 3.0 * (delta * (1.0 - delta) / trials as f64).max(0.0).sqrt()
}

fn check_delta(delta: f64) -> Result<(), ConcentrationError> {
    if delta > 0.0 && delta <= 1.0 {
        Ok(())
    } else {
        Err(ConcentrationError::BadDelta(delta))
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn count_violations<F>(trials: u64, seed: u64, trial: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    (0..trials)
        .into_par_iter()
        .filter(|&i| trial(&mut trial_rng(seed, i)))
        .count() as u64
}

/// Per-step scale `sigma_i` of a martingale increment `X_i = sigma_i * Z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SigmaSchedule {
    Constant(f64),
    /// `nonnegative` while the running sum is `>= 0`, otherwise `negative`.
    SignAdaptive { nonnegative: f64, negative: f64 },
}

impl SigmaSchedule {
    fn sigma(&self, running_sum: f64) -> f64 {
        match *self {
            SigmaSchedule::Constant(s) => s,
            SigmaSchedule::SignAdaptive {
                nonnegative,
                negative,
            } => {
                if running_sum >= 0.0 {
                    nonnegative
                } else {
                    negative
                }
            }
        }
    }

    fn label(&self) -> String {
        match *self {
            SigmaSchedule::Constant(s) => format!("constant({s})"),
            SigmaSchedule::SignAdaptive {
                nonnegative,
                negative,
            } => format!("sign_adaptive({nonnegative},{negative})"),
        }
    }
}

/// `S = sum X_i` over `n` Gaussian increments with scales from `schedule`;
/// a trial violates when `S > sqrt(2 * V * ln(1/delta))`, with `V` the
/// realized `sum sigma_i^2`.
pub fn check_martingale_sum(
    schedule: SigmaSchedule,
    n: usize,
    trials: u64,
    delta: f64,
    seed: u64,
) -> Result<TailCheckReport, ConcentrationError> {
    check_delta(delta)?;
    let log_term = (1.0 / delta).ln();
    let violations = count_violations(trials, seed, |rng| {
        let mut sum = 0.0;
        let mut variance = 0.0;
        for _ in 0..n {
            let sigma = schedule.sigma(sum);
            let z: f64 = rng.sample(StandardNormal);
            sum += sigma * z;
            variance += sigma * sigma;
        }
        sum > (2.0 * variance * log_term).sqrt()
    });
    Ok(TailCheckReport::new(
        format!("martingale_sum[{},n={n}]", schedule.label()),
        trials,
        violations,
        delta,
    ))
}

/// Uniform-in-time bound for a unit-variance Gaussian stream with mean
/// `drift`: a trial violates if for some `t <= n_max` the partial sum exceeds
/// `sqrt(2 * t * ln(f(t) / delta))`, the logarithm clamped at zero.
pub fn check_anytime_bound(
    n_max: u64,
    trials: u64,
    delta: f64,
    drift: f64,
    seed: u64,
) -> Result<TailCheckReport, ConcentrationError> {
    check_delta(delta)?;
    let thresholds: Vec<f64> = (1..=n_max)
        .map(|t| {
            let t = t as f64;
            (2.0 * t * (rate(t) / delta).ln().max(0.0)).sqrt()
        })
        .collect();
    let violations = count_violations(trials, seed, |rng| {
        let mut sum = 0.0;
        for &threshold in &thresholds {
            let z: f64 = rng.sample(StandardNormal);
            sum += drift + z;
            if sum > threshold {
                return true;
            }
        }
        false
    });
    Ok(TailCheckReport::new(
        format!("anytime_bound[n_max={n_max},drift={drift}]"),
        trials,
        violations,
        delta,
    ))
}

/// `sqrt(3 (m + k) / (m k))`.
pub fn sampled_means_sigma(m: usize, k: usize) -> f64 {
    let (m, k) = (m as f64, k as f64);
    (3.0 * (m + k) / (m * k)).sqrt()
}

/// Draws disjoint uniform index sets of sizes `m` and `k` from the `n`
/// means, observes each selected mean with unit Gaussian noise, and tests
/// `Z = mean(I_m) - mean(I_k) > sigma_eff * sqrt(2 ln(1/delta))`.
pub fn check_sampled_means_difference(
    p_means: &[f64],
    m: usize,
    k: usize,
    trials: u64,
    delta: f64,
    seed: u64,
) -> Result<TailCheckReport, ConcentrationError> {
    check_delta(delta)?;
    let n = p_means.len();
    if m == 0 || k == 0 {
        return Err(ConcentrationError::EmptySet);
    }
    if m + k > n {
        return Err(ConcentrationError::SetsTooLarge { m, k, n });
    }
    let threshold = sampled_means_sigma(m, k) * (2.0 * (1.0 / delta).ln()).sqrt();
    let violations = count_violations(trials, seed, |rng| {
        let picked = sample(rng, n, m + k).into_vec();
        let mut observe = |i: usize| p_means[i] + rng.sample::<f64, _>(StandardNormal);
        let first: f64 = picked[..m].iter().map(|&i| observe(i)).sum::<f64>() / m as f64;
        let second: f64 = picked[m..].iter().map(|&i| observe(i)).sum::<f64>() / k as f64;
        first - second > threshold
    });
    let lo = p_means.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = p_means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(TailCheckReport::new(
        format!("sampled_means_difference[n={n},m={m},k={k},p=[{lo},{hi}]]"),
        trials,
        violations,
        delta,
    ))
}

/// Result of evaluating `zy + z ln f(x) < x` with `x = zy + alpha z ln(zy)`
/// on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReparamReport {
    pub checked: u64,
    /// Grid points outside the hypotheses `y >= 1`, `zy > 10`, `alpha > 4`.
    pub skipped: u64,
    pub violations: u64,
    /// Smallest `x - zy - z ln f(x)` over checked points, divided by `z`.
    pub min_margin: f64,
    /// `sqrt(a) (sqrt(a) x^(3/4 - a/2) + x^(3/2 - a/2))` at `a = 4`, `x = 10`.
    pub boundary_value: f64,
    pub passed: bool,
}

/// `sqrt(a) * (sqrt(a) * x^(3/4 - a/2) + x^(3/2 - a/2))`, the quantity that
/// must stay below one for the inequality to go through.
pub fn reparam_bound(alpha: f64, x: f64) -> f64 {
    alpha.sqrt() * (alpha.sqrt() * x.powf(0.75 - alpha / 2.0) + x.powf(1.5 - alpha / 2.0))
}

pub fn check_reparam_inequality(z_grid: &[f64], y_grid: &[f64], alpha_grid: &[f64]) -> ReparamReport {
    let mut checked = 0;
    let mut skipped = 0;
    let mut violations = 0;
    let mut min_margin = f64::INFINITY;
    for &z in z_grid {
        for &y in y_grid {
            for &alpha in alpha_grid {
                let zy = z * y;
                if !(y >= 1.0 && zy > 10.0 && alpha > 4.0 && z > 0.0) {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                // dividing by z: y + ln f(x) < y + alpha ln(zy)
                let x = zy + alpha * z * zy.ln();
                let margin = alpha * zy.ln() - rate(x).ln();
                min_margin = min_margin.min(margin);
                if margin <= 0.0 {
                    violations += 1;
                }
            }
        }
    }
    let boundary_value = reparam_bound(4.0, 10.0);
    let passed = violations == 0 && boundary_value < 1.0;
    ReparamReport {
        checked,
        skipped,
        violations,
        min_margin,
        boundary_value,
        passed,
    }
}

/// Geometric grid from `lo` to `hi` with `points` points.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && lo > 0.0 && hi > lo);
    let step = (hi / lo).ln() / (points - 1) as f64;
    (0..points).map(|i| lo * (step * i as f64).exp()).collect()
}

/// All tail checks at one `delta`, plus the reparameterization grid check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tails: Vec<TailCheckReport>,
    pub reparam: ReparamReport,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reparam.passed && self.tails.iter().all(|r| r.passed)
    }
}

/// Runs every check at each of `deltas` with `trials` trials each.
pub fn run_suite(deltas: &[f64], trials: u64, seed: u64) -> Result<SuiteReport, ConcentrationError> {
    let mut tails = Vec::new();
    for (d, &delta) in deltas.iter().enumerate() {
        let base = seed.wrapping_add(1000 * d as u64);
        tails.push(check_martingale_sum(SigmaSchedule::Constant(1.0), 100, trials, delta, base)?);
        tails.push(check_martingale_sum(
            SigmaSchedule::SignAdaptive {
                nonnegative: 2.0,
                negative: 1.0,
            },
            100,
            trials,
            delta,
            base + 1,
        )?);
        tails.push(check_anytime_bound(1000, trials, delta, 0.0, base + 2)?);
        tails.push(check_sampled_means_difference(&[0.5; 20], 5, 5, trials, delta, base + 3)?);
        let spread: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
        tails.push(check_sampled_means_difference(&spread, 5, 5, trials, delta, base + 4)?);
    }
    let reparam = check_reparam_inequality(
        &log_grid(0.01, 1e4, 40),
        &log_grid(1.0, 1e6, 40),
        &[4.0 + 1e-9, 4.01, 4.5, 5.0, 8.0, 16.0],
    );
    Ok(SuiteReport { tails, reparam })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tolerance_is_three_standard_errors() {
        assert_relative_eq!(tolerance(0.05, 10_000), 0.05 + 3.0 * (0.05f64 * 0.95 / 1e4).sqrt());
        let report = TailCheckReport::new("x", 100, 100, 1.0);
        assert!(report.passed);
    }

    #[test]
    fn gaussian_martingale_sum() {
        let r = check_martingale_sum(SigmaSchedule::Constant(1.0), 100, 10_000, 0.05, 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.rate() > 0.0);
    }

    #[test]
    fn zero_sigma_never_violates() {
        let r = check_martingale_sum(SigmaSchedule::Constant(0.0), 50, 1000, 0.5, 0).unwrap();
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn anytime_bound_with_delta_one_terminates() {
        let r = check_anytime_bound(200, 500, 1.0, 0.0, 3).unwrap();
        assert!(r.passed);
        assert!(r.violations > 0);
    }

    #[test]
    fn drift_is_detected() {
        let r = check_anytime_bound(1000, 1000, 0.1, 0.5, 4).unwrap();
        assert!(r.rate() > 0.95, "{r:?}");
        assert!(!r.passed);
    }

    #[test]
    fn sampled_means_sigma_half_split() {
        for n in [2usize, 10, 20, 100] {
            assert_relative_eq!(sampled_means_sigma(n / 2, n / 2), (12.0 / n as f64).sqrt(), epsilon = 1e-15);
        }
    }

    #[test]
    fn sampled_means_rejects_oversized_sets() {
        assert_eq!(
            check_sampled_means_difference(&[0.0; 9], 5, 5, 10, 0.1, 0),
            Err(ConcentrationError::SetsTooLarge { m: 5, k: 5, n: 9 })
        );
    }

    #[test]
    fn reparam_examples() {
        let single = check_reparam_inequality(&[1.0], &[11.0], &[4.01]);
        assert_eq!((single.checked, single.violations), (1, 0));
        let big = check_reparam_inequality(&[1.0], &[1e6], &[4.5]);
        assert!(big.min_margin > 10.0);
        assert_relative_eq!(
            single.boundary_value,
            2.0 * (2.0 * 10f64.powf(-1.25) + 10f64.powf(-0.5)),
            epsilon = 1e-12
        );
        assert!(reparam_bound(4.0 + 1e-9, 10.0 + 1e-9) < 1.0);
    }

    #[test]
    fn reports_do_not_depend_on_thread_count() {
        let a = check_anytime_bound(100, 2000, 0.1, 0.0, 9).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| check_anytime_bound(100, 2000, 0.1, 0.0, 9).unwrap());
        assert_eq!(a, b);
    }
}
