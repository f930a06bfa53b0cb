//! Positive predictive value of study successes when every study shares one
//! design: single studies, "at least one of n" under publication bias, and
//! "exactly j of n".

use crate::error::{Error, Result};
use crate::numerics::Probability;

/// A study design's false-positive rate α and power γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRates {
    alpha: Probability,
    power: Probability,
}

impl ErrorRates {
    /// Requires 0 < α < 1 and 0 < γ ≤ 1.
    pub fn new(alpha: f64, power: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "false-positive rate must lie in (0, 1), got {alpha}"
            )));
        }
        if !power.is_finite() || power <= 0.0 || power > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "power must lie in (0, 1], got {power}"
            )));
        }
        Ok(Self {
            alpha: Probability::new(alpha)?,
            power: Probability::new(power)?,
        })
    }

    /// False-positive rate α.
    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    /// Power γ (true-positive rate).
    pub fn power(&self) -> f64 {
        self.power.value()
    }

    /// Whether a success carries information at all, i.e. γ > α.
    pub fn is_informative(&self) -> bool {
        self.power() > self.alpha()
    }
}

/// Likelihood ratio of a single observed success: γ / α.
pub fn likelihood_ratio_single(rates: &ErrorRates) -> f64 {
    rates.power() / rates.alpha()
}

/// Converts a prior into a posterior through a likelihood ratio:
/// prior / (prior + (1 − prior) / lr).
///
/// Degenerate priors of exactly 0 or 1 are rejected; the posterior would be
/// constant and almost always indicates a configuration error.
pub fn posterior_from_lr(prior: f64, lr: f64) -> Result<f64> {
    if prior == 0.0 || prior == 1.0 {
        return Err(Error::DegeneratePrior(prior));
    }
    if !prior.is_finite() || !(0.0..=1.0).contains(&prior) {
        return Err(Error::InvalidParameter(format!(
            "prior must lie in (0, 1), got {prior}"
        )));
    }
    if !lr.is_finite() || lr <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "likelihood ratio must be finite and > 0, got {lr}"
        )));
    }
    Ok(prior / (prior + (1.0 - prior) / lr))
}

/// Likelihood ratio of "at least one of n attempted studies succeeded",
/// with failures hidden by publication bias:
/// (1 − (1 − γ)^n) / (1 − (1 − α)^n).
pub fn likelihood_ratio_at_least_one(rates: &ErrorRates, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("study count n must be >= 1".into()));
    }
    let n = f64::from(n);
    let miss_true = (1.0 - rates.power()).powf(n);
    let miss_false = (1.0 - rates.alpha()).powf(n);
    Ok((1.0 - miss_true) / (1.0 - miss_false))
}

/// Likelihood ratio of "exactly j of n attempted studies succeeded":
/// (γ/α)^j ((1−γ)/(1−α))^(n−j).  The binomial coefficients cancel.
pub fn likelihood_ratio_exactly_j(rates: &ErrorRates, n: u32, j: u32) -> Result<f64> {
    if j > n {
        return Err(Error::Domain(format!(
            "success count j = {j} exceeds study count n = {n}"
        )));
    }
    let hits = f64::from(j);
    let misses = f64::from(n - j);
    let log_ratio = hits * (rates.power().ln() - rates.alpha().ln())
        + misses * ((1.0 - rates.power()).ln() - (1.0 - rates.alpha()).ln());
    Ok(log_ratio.exp())
}
