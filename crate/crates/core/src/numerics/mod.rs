//! Special functions and probability primitives used by every closed form
//! in the crate: log-gamma, the lower incomplete gamma function, the normal
//! CDF and quantile, and the Poisson pmf.
//!
//! Everything here is pure and reentrant. All pmf/pdf arithmetic is done in
//! log space and converted to linear values only at API boundaries.

mod gamma;
mod normal;
mod poisson;

pub use gamma::{ln_lower_incomplete_gamma, log_gamma, lower_incomplete_gamma, regularized_lower_gamma};
pub use normal::{erf, erfc, normal_cdf, normal_quantile};
pub use poisson::{poisson_log_pmf, poisson_pmf};

use crate::error::{Error, Result};

/// A probability, constrained to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    /// Validates that `value` is finite and lies in `[0, 1]`.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidParameter(format!(
                "probability must lie in [0, 1], got {value}"
            )));
        }
        Ok(Self(value))
    }

    /// The raw value.
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A strictly positive, finite real number.
///
/// Houses rate and shape parameters, interest levels, Poisson means, and
/// likelihood ratios, none of which may be zero or infinite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveReal(f64);

impl PositiveReal {
    /// Validates that `value` is finite and strictly positive.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "value must be finite and > 0, got {value}"
            )));
        }
        Ok(Self(value))
    }

    /// The raw value.
    pub fn value(self) -> f64 {
        self.0
    }
}
