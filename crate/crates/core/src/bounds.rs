//! Anytime confidence schedule shared by the elimination learners.
//!
//! All logarithms are natural.

/// Rate function `f(t) = (t + 1) ln^2(t + 1)`.
///
/// The learners call [`getActiveSet`](crate::tem::Tem::active_set) with
/// confidence level `1 / f(t)`, i.e. `delta_inv = f(t)`.
pub fn rate(t: f64) -> f64 {
    let s = t + 1.0;
    let l = s.ln();
    s * l * l
}

/// Half-width of the confidence interval on a pairwise mean difference
/// estimated from `n` effective samples, among `arms` competitors, at
/// confidence `1 / delta_inv`:
///
/// ```text
/// radius = sqrt( (12 / n) * max(0, ln(2 * arms * f(n) * delta_inv)) )
/// ```
///
/// The constant 12 is twice the per-sample variance proxy 6 of a difference
/// of two phase means; `2 * arms` accounts for the signed union bound. With
/// this choice `radius < gap / 2` holds exactly when
/// `n > (48 / gap^2) * (ln f(n) + ln(2 * arms * delta_inv))`.
pub fn confidence_radius(delta_inv: f64, n: u64, arms: usize) -> f64 {
    debug_assert!(n >= 1, "radius needs at least one sample");
    let n = n as f64;
    let log_term = (2.0 * arms as f64 * rate(n) * delta_inv).ln().max(0.0);
    (12.0 / n * log_term).sqrt()
}
