//! Bayesian calculus for study evidence observed through publication bias.
//!
//! When weak and strong studies of a hypothesis are attempted at rates tied
//! to a latent interest level and only successes are published, the
//! posterior probability of the hypothesis given the observed success
//! counts has a closed form — and for sufficiently overdispersed interest
//! priors each *additional* weak success lowers it.  This crate computes
//! those posteriors, locates the paradox region, covers the homogeneous
//! variant where evidence strength is a p-value, and ships two independent
//! verification oracles (seeded Monte Carlo and adaptive quadrature).
//!
//! Entry points:
//! - [`classical`]: single-design positive predictive values.
//! - [`framework`]: the two-study-type interest model and its paradox
//!   thresholds.
//! - [`homogeneous`]: the p-value variant.
//! - [`simulate`]: Monte Carlo and quadrature oracles.

#![warn(missing_docs)]

pub mod classical;
pub mod error;
pub mod framework;
pub mod homogeneous;
pub mod numerics;
pub mod quadrature;
pub mod simulate;

pub use classical::{
    likelihood_ratio_at_least_one, likelihood_ratio_exactly_j, likelihood_ratio_single,
    posterior_from_lr, ErrorRates,
};
pub use error::{Error, Result};
pub use framework::{
    aggregate_probability, general_paradox_check, is_paradoxical, is_paradoxical_uniform_up_to,
    likelihood_ratio, min_uniform_upper_for, observation_probability, paradox_rate_threshold,
    posterior, weak_only_likelihood_ratio, CountEvent, CountRequirement, FrameworkParams,
    InterestPrior, Observation,
};
pub use homogeneous::{
    homogeneous_likelihood_ratio, homogeneous_observation_probability,
    homogeneous_paradox_threshold, homogeneous_posterior, normal_shift_power,
    ratio_monotonicity_check, shift_from_design, CurveTable, HomogeneousParams,
    HomogeneousThreshold, NullCurve, ParadoxRegime, PowerCurve,
};
pub use simulate::{
    compare_framework_posteriors, compare_homogeneous_posteriors,
    negative_binomial_marginal_check, poisson_thinning_check, quadrature_homogeneous_probability,
    quadrature_observation_probability, simulate_framework, simulate_homogeneous, JointCountTable,
    PmfCheckReport, PosteriorComparison, SimulationConfig,
};
