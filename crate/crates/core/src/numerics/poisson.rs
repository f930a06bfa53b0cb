//! Poisson pmf, evaluated in log space so large counts and means never
//! overflow the factorial.

use super::gamma::log_gamma_unchecked;
use crate::error::{Error, Result};

/// Log of the Poisson pmf: k ln λ − λ − ln k!.
pub fn poisson_log_pmf(k: u64, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "poisson pmf requires finite lambda > 0, got {lambda}"
        )));
    }
    Ok(poisson_log_pmf_unchecked(k, lambda))
}

pub(crate) fn poisson_log_pmf_unchecked(k: u64, lambda: f64) -> f64 {
    if k == 0 {
        return -lambda;
    }
    k as f64 * lambda.ln() - lambda - log_gamma_unchecked(k as f64 + 1.0)
}

/// Poisson pmf Pr(N = k) for N ~ Poisson(λ).
pub fn poisson_pmf(k: u64, lambda: f64) -> Result<f64> {
    Ok(poisson_log_pmf(k, lambda)?.exp())
}
