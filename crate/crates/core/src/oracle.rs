//! Ground-truth gap and `kappa` oracles computed by exhaustive enumeration.
//!
//! These are evaluation quantities only; no learner reads them.

use thiserror::Error;

use crate::env::{linear_link, DuelEnv, EnvError, FactoredEnv, UtilityDuelEnv};

/// Default cap on the number of composite actions the oracles will enumerate.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("arm {arm} of factor {factor} has gap {gap} <= 0: best arm not uniformly identifiable")]
    NonIdentifiable { factor: usize, arm: usize, gap: f64 },
    #[error("{actions} composite actions exceed the enumeration limit {limit}")]
    SpaceTooLarge { actions: String, limit: usize },
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// Per-factor gaps `Delta_l(a)` and best atomic arms `a*_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapTable {
    gaps: Vec<Vec<f64>>,
    best: Vec<usize>,
}

impl GapTable {
    pub fn gaps(&self) -> &[Vec<f64>] {
        &self.gaps
    }

    pub fn gap(&self, factor: usize, arm: usize) -> f64 {
        self.gaps[factor][arm]
    }

    pub fn best(&self) -> &[usize] {
        &self.best
    }

    /// `sum_l Delta_l(a_l)` for a composite action given by its coordinates.
    pub fn total_gap(&self, coords: &[usize]) -> f64 {
        coords.iter().zip(&self.gaps).map(|(&a, row)| row[a]).sum()
    }
}

/// Means of every composite action in enumeration order.
fn mean_table<E: FactoredEnv>(env: &E, limit: usize) -> Result<Vec<f64>, OracleError> {
    let space = env.space();
    match space.cardinality() {
        Some(n) if n <= limit => {}
        other => {
            return Err(OracleError::SpaceTooLarge {
                actions: other.map_or_else(|| "more than usize::MAX".into(), |n| n.to_string()),
                limit,
            })
        }
    }
    space
        .iter()
        .map(|a| env.exact_mean(&a).map_err(OracleError::from))
        .collect()
}

fn strides(sizes: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; sizes.len()];
    for f in (0..sizes.len().saturating_sub(1)).rev() {
        strides[f] = strides[f + 1] * sizes[f + 1];
    }
    strides
}

pub fn compute_gaps<E: FactoredEnv>(env: &E) -> Result<GapTable, OracleError> {
    compute_gaps_with_limit(env, DEFAULT_ENUMERATION_LIMIT)
}

/// `Delta_k(a) = min_b mu(a*_k, b) - mu(a, b)` over all reference tuples `b`
/// of the other factors, where `a*` is the best composite action.
pub fn compute_gaps_with_limit<E: FactoredEnv>(
    env: &E,
    limit: usize,
) -> Result<GapTable, OracleError> {
    let sizes = env.space().sizes().to_vec();
    let means = mean_table(env, limit)?;
    let strides = strides(&sizes);

    let best_index = means
        .iter()
        .enumerate()
        .fold(0, |best, (i, &m)| if m > means[best] { i } else { best });
    let best: Vec<usize> = sizes
        .iter()
        .zip(&strides)
        .map(|(&k, &s)| (best_index / s) % k)
        .collect();

    let mut gaps: Vec<Vec<f64>> = sizes.iter().map(|&k| vec![f64::INFINITY; k]).collect();
    for (factor, (&k, &stride)) in sizes.iter().zip(&strides).enumerate() {
        let star = best[factor];
        gaps[factor][star] = 0.0;
        for (idx, &mean) in means.iter().enumerate() {
            let arm = (idx / stride) % k;
            if arm == star {
                continue;
            }
            let reference = idx + star * stride - arm * stride;
            let diff = means[reference] - mean;
            let slot = &mut gaps[factor][arm];
            if diff < *slot {
                *slot = diff;
            }
        }
        for (arm, &gap) in gaps[factor].iter().enumerate() {
            if arm != star && gap <= 0.0 {
                return Err(OracleError::NonIdentifiable { factor, arm, gap });
            }
        }
    }
    Ok(GapTable { gaps, best })
}

pub fn compute_kappa<E: FactoredEnv>(env: &E, gaps: &GapTable) -> Result<f64, OracleError> {
    compute_kappa_with_limit(env, gaps, DEFAULT_ENUMERATION_LIMIT)
}

/// Smallest `kappa >= 1` with `mu(a*) - mu(a) <= kappa * sum_l Delta_l(a_l)`
/// for every composite `a`.
pub fn compute_kappa_with_limit<E: FactoredEnv>(
    env: &E,
    gaps: &GapTable,
    limit: usize,
) -> Result<f64, OracleError> {
    let means = mean_table(env, limit)?;
    let space = env.space();
    let best: Vec<usize> = gaps.best().to_vec();
    let star_mean = env.exact_mean(&best.clone().into())?;
    let mut kappa = 1.0f64;
    for (action, &mean) in space.iter().zip(&means) {
        if action.coords() == best.as_slice() {
            continue;
        }
        let total = gaps.total_gap(action.coords());
        assert!(
            total > 0.0,
            "suboptimal action {action} has zero total gap; gap table violates identifiability"
        );
        kappa = kappa.max((star_mean - mean) / total);
    }
    Ok(kappa)
}

/// First-position gaps of a utility duel, with the second position as the
/// reference set: `Delta(a) = min_b nu(u* - u_b) - nu(u_a - u_b)`.
pub fn duel_gaps(env: &UtilityDuelEnv) -> Result<GapTable, OracleError> {
    let u = env.utilities();
    let star = env.best_arm();
    let mut gaps = vec![0.0; u.len()];
    for (arm, gap) in gaps.iter_mut().enumerate() {
        if arm == star {
            continue;
        }
        *gap = (0..u.len())
            .map(|b| linear_link(u[star] - u[b]) - linear_link(u[arm] - u[b]))
            .fold(f64::INFINITY, f64::min);
        if *gap <= 0.0 {
            return Err(OracleError::NonIdentifiable {
                factor: 0,
                arm,
                gap: *gap,
            });
        }
    }
    debug_assert_eq!(env.arms(), gaps.len());
    Ok(GapTable {
        gaps: vec![gaps],
        best: vec![star],
    })
}
