//! Numerical limits at `0+` and at infinity along geometric grids.

use crate::error::Result;

/// Threshold below which a sampled limit counts as zero.
pub const EPS_LIMIT: f64 = 1e-7;
/// Number of geometric samples `t = 2^{-k}` (or `2^k`), `k = 1..=SAMPLES`.
pub const SAMPLES: i32 = 40;
/// Monotonicity window for the tends-to-zero decision.
pub const WINDOW: usize = 5;
const MAX_RATIO: f64 = 0.98;
/// Smallest per-sample decay exponent `-log2(v[i+1] / v[i])` accepted as power decay.
pub const MIN_DECAY_RATE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitTarget {
    ZeroPlus,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitDecision {
    TendsToZero,
    PositiveLimit,
    Diverges,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub target: LimitTarget,
    pub samples: Vec<(f64, f64)>,
    pub decision: LimitDecision,
    pub last_value: f64,
    /// Limit extrapolated from geometrically shrinking increments, when they are.
    pub extrapolated: Option<f64>,
}

impl LimitEstimate {
    pub fn tends_to_zero(&self) -> bool {
        self.decision == LimitDecision::TendsToZero
    }
}

/// Limit of the last increments when they shrink geometrically, or the common
/// value when the tail is constant.
fn extrapolate(v: &[f64]) -> Option<f64> {
    let n = v.len();
    if n < 4 {
        return None;
    }
    let tail = &v[n.saturating_sub(8)..];
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let last = *tail.last().unwrap();
    if diffs.iter().all(|&d| d == 0.0) {
        return Some(last);
    }
    if diffs.contains(&0.0) || !diffs.iter().all(|&d| (d > 0.0) == (diffs[0] > 0.0)) {
        return None;
    }
    let ratios: Vec<f64> = diffs.windows(2).map(|w| w[1] / w[0]).collect();
    if ratios.iter().any(|&r| !(r > 0.0 && r <= MAX_RATIO)) {
        return None;
    }
    let r = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Some(last + diffs.last().unwrap() * r / (1.0 - r))
}

/// Positive values whose decay exponent per geometric step stays above
/// `MIN_DECAY_RATE` and does not shrink, as for `t^-b (ln t)^k` at infinity.
fn decays_like_power(recent: &[f64]) -> bool {
    if recent.iter().any(|&v| !(v > 0.0)) {
        return false;
    }
    let rates: Vec<f64> = recent.windows(2).map(|w| -(w[1] / w[0]).log2()).collect();
    rates.iter().all(|&r| r >= MIN_DECAY_RATE) && rates.windows(2).all(|w| w[1] >= w[0] - 1e-9)
}

/// Classify a sample sequence ordered toward the limit point.
pub fn decide(values: &[f64]) -> (LimitDecision, Option<f64>) {
    let n = values.len();
    if n < WINDOW {
        return (LimitDecision::Inconclusive, None);
    }
    let last = values[n - 1];
    if last == f64::INFINITY {
        return (LimitDecision::Diverges, None);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return (LimitDecision::Inconclusive, None);
    }
    let recent = &values[n - WINDOW..];
    let nonincreasing = recent.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    let ext = extrapolate(values);
    if nonincreasing && recent.iter().all(|v| v.abs() < EPS_LIMIT) {
        return (LimitDecision::TendsToZero, ext);
    }
    if let Some(l) = ext {
        if nonincreasing && l.abs() < EPS_LIMIT {
            return (LimitDecision::TendsToZero, ext);
        }
        if l > EPS_LIMIT {
            return (LimitDecision::PositiveLimit, ext);
        }
    }
    if decays_like_power(recent) {
        return (LimitDecision::TendsToZero, ext);
    }
    let increasing = recent.windows(2).all(|w| w[1] > w[0]);
    if increasing {
        let d: Vec<f64> = recent.windows(2).map(|w| w[1] - w[0]).collect();
        let steady = d.windows(2).all(|w| w[1] >= MAX_RATIO * w[0]);
        if steady {
            return (LimitDecision::Diverges, ext);
        }
    }
    (LimitDecision::Inconclusive, ext)
}

/// Sample `g` at `t = 2^{-k}` (toward `0+`) or `t = 2^k` (toward infinity),
/// `k = 1..=40`, and classify. A failed evaluation makes the estimate inconclusive.
pub fn estimate<G>(target: LimitTarget, mut g: G) -> LimitEstimate
where
    G: FnMut(f64) -> Result<f64>,
{
    let mut samples = Vec::with_capacity(SAMPLES as usize);
    for k in 1..=SAMPLES {
        let t = match target {
            LimitTarget::ZeroPlus => 2f64.powi(-k),
            LimitTarget::Infinity => 2f64.powi(k),
        };
        match g(t) {
            Ok(v) => samples.push((t, v)),
            Err(_) => {
                let last_value = samples.last().map_or(f64::NAN, |s: &(f64, f64)| s.1);
                return LimitEstimate {
                    target,
                    samples,
                    decision: LimitDecision::Inconclusive,
                    last_value,
                    extrapolated: None,
                };
            }
        }
    }
    from_samples(target, samples)
}

/// Classify a sequence sampled elsewhere (e.g. tail norms along `n = 2^k`).
pub fn from_samples(target: LimitTarget, samples: Vec<(f64, f64)>) -> LimitEstimate {
    let values: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let (decision, extrapolated) = decide(&values);
    LimitEstimate {
        target,
        last_value: values.last().copied().unwrap_or(f64::NAN),
        samples,
        decision,
        extrapolated,
    }
}

pub fn limit_at_zero<G: FnMut(f64) -> Result<f64>>(g: G) -> LimitEstimate {
    estimate(LimitTarget::ZeroPlus, g)
}

pub fn limit_at_infinity<G: FnMut(f64) -> Result<f64>>(g: G) -> LimitEstimate {
    estimate(LimitTarget::Infinity, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_decay_is_zero() {
        let e = limit_at_infinity(|t| Ok(1.0 / t));
        assert_eq!(e.decision, LimitDecision::TendsToZero);
    }

    #[test]
    fn square_root_decay_uses_extrapolation() {
        let e = limit_at_zero(|t: f64| Ok(t.sqrt()));
        assert!(e.last_value > EPS_LIMIT);
        assert_eq!(e.decision, LimitDecision::TendsToZero);
    }

    #[test]
    fn constant_is_positive() {
        let e = limit_at_zero(|_| Ok(1.0));
        assert_eq!(e.decision, LimitDecision::PositiveLimit);
        assert_eq!(e.extrapolated, Some(1.0));
        let e = limit_at_infinity(|t| Ok(0.5 + 1.0 / t));
        assert_eq!(e.decision, LimitDecision::PositiveLimit);
        assert!((e.extrapolated.unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn logarithmic_growth_diverges() {
        let e = limit_at_zero(|t: f64| Ok(-t.ln()));
        assert_eq!(e.decision, LimitDecision::Diverges);
    }

    #[test]
    fn power_times_log_decay() {
        let e = limit_at_infinity(|t: f64| Ok((1.0 + t.ln()) / t.sqrt()));
        assert!(e.last_value > EPS_LIMIT);
        assert_eq!(e.decision, LimitDecision::TendsToZero);
    }

    #[test]
    fn very_slow_decay_is_inconclusive() {
        let e = limit_at_zero(|t: f64| Ok(t.powf(0.01)));
        assert_eq!(e.decision, LimitDecision::Inconclusive);
    }

    #[test]
    fn failure_is_inconclusive() {
        let e = limit_at_zero(|t: f64| {
            if t < 1e-3 {
                Err(crate::error::Error::Domain("x".into()))
            } else {
                Ok(t)
            }
        });
        assert_eq!(e.decision, LimitDecision::Inconclusive);
    }
}
