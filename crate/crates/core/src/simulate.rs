//! Independent verification oracles: exact Monte Carlo simulation of both
//! generative models, adaptive quadrature of the defining mixture integrals,
//! and distributional identity checks (Poisson thinning, the
//! negative-binomial marginal of a gamma-Poisson mixture).
//!
//! Simulation is deterministic under any degree of parallelism: sample `i`
//! draws from its own ChaCha8 stream derived from `(seed, i)`, and shards
//! merge by tally addition.

use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Gamma, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{FrameworkParams, InterestPrior, Observation};
use crate::homogeneous::{HomogeneousParams, NullCurve, PowerCurve};
use crate::numerics::{log_gamma, normal_quantile, poisson_log_pmf, poisson_pmf};
use crate::quadrature;

/// Samples per parallel shard; results do not depend on this value because
/// every sample owns its RNG stream.
const BATCH_SIZE: u64 = 1 << 14;

/// Relative error target for the quadrature oracles.
const QUAD_REL_TOL: f64 = 1e-10;

/// Cells with fewer occupants than this are reported as insufficient
/// rather than compared.
pub const MIN_CELL_OCCUPANTS: u64 = 50;

/// Size and seeding of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    /// Number of samples to draw.
    pub samples: u64,
    /// Seed for the deterministic RNG streams.
    pub seed: u64,
    /// Joint counts above this value land in the overflow tally.
    pub max_count_tracked: u32,
}

impl SimulationConfig {
    /// Config with the default tracking window of 20 counts per margin.
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        Ok(Self {
            samples,
            seed,
            max_count_tracked: 20,
        })
    }

    /// Overrides the tracking window.
    pub fn with_max_count(mut self, max_count_tracked: u32) -> Self {
        self.max_count_tracked = max_count_tracked;
        self
    }
}

/// Empirical joint tally of (truth, weak successes, strong successes).
///
/// Samples whose counts exceed the tracking window, or that a conditioning
/// rule discards, are tallied per truth value in `overflow`, so in-range
/// tallies plus overflow always equal the sample total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointCountTable {
    max_count_tracked: u32,
    total: u64,
    // indexed [truth][j][k], flattened
    cells: Vec<u64>,
    overflow: [u64; 2],
}

/// One nonzero cell of a [`JointCountTable`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CountRow {
    /// Truth value of the hypothesis for this tally.
    pub truth: bool,
    /// Weak-success count j.
    pub weak: u32,
    /// Strong-success count k.
    pub strong: u32,
    /// Number of samples in the cell.
    pub tally: u64,
}

#[derive(Serialize)]
struct TableView<'a> {
    total: u64,
    max_count_tracked: u32,
    overflow_when_false: u64,
    overflow_when_true: u64,
    cells: &'a [CountRow],
}

impl JointCountTable {
    fn new(max_count_tracked: u32) -> Self {
        let side = max_count_tracked as usize + 1;
        Self {
            max_count_tracked,
            total: 0,
            cells: vec![0; 2 * side * side],
            overflow: [0, 0],
        }
    }

    fn index(&self, truth: bool, j: u32, k: u32) -> usize {
        let side = self.max_count_tracked as usize + 1;
        (truth as usize) * side * side + j as usize * side + k as usize
    }

    fn record(&mut self, truth: bool, j: u64, k: u64) {
        self.total += 1;
        if j <= u64::from(self.max_count_tracked) && k <= u64::from(self.max_count_tracked) {
            let idx = self.index(truth, j as u32, k as u32);
            self.cells[idx] += 1;
        } else {
            self.overflow[truth as usize] += 1;
        }
    }

    fn record_overflow(&mut self, truth: bool) {
        self.total += 1;
        self.overflow[truth as usize] += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!(self.max_count_tracked, other.max_count_tracked);
        self.total += other.total;
        for (mine, theirs) in self.cells.iter_mut().zip(other.cells.iter()) {
            *mine += theirs;
        }
        self.overflow[0] += other.overflow[0];
        self.overflow[1] += other.overflow[1];
        self
    }

    /// Largest tracked count per margin.
    pub fn max_count_tracked(&self) -> u32 {
        self.max_count_tracked
    }

    /// Total number of samples, including overflow.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Overflow tally for one truth value.
    pub fn overflow(&self, truth: bool) -> u64 {
        self.overflow[truth as usize]
    }

    /// Tally of one tracked cell; `None` outside the tracking window.
    pub fn tally(&self, truth: bool, j: u32, k: u32) -> Option<u64> {
        if j > self.max_count_tracked || k > self.max_count_tracked {
            return None;
        }
        Some(self.cells[self.index(truth, j, k)])
    }

    /// Samples landing in cell (j, k) regardless of truth.
    pub fn occupants(&self, j: u32, k: u32) -> Option<u64> {
        Some(self.tally(true, j, k)? + self.tally(false, j, k)?)
    }

    /// Empirical Pr(hypothesis true | j, k); `None` for empty or untracked
    /// cells.
    pub fn empirical_posterior(&self, j: u32, k: u32) -> Option<f64> {
        let hits = self.tally(true, j, k)?;
        let occupants = self.occupants(j, k)?;
        if occupants == 0 {
            return None;
        }
        Some(hits as f64 / occupants as f64)
    }

    /// Total samples drawn under one truth value, overflow included.
    pub fn truth_total(&self, truth: bool) -> u64 {
        let side = self.max_count_tracked as usize + 1;
        let start = (truth as usize) * side * side;
        self.cells[start..start + side * side].iter().sum::<u64>() + self.overflow[truth as usize]
    }

    /// Nonzero tracked cells in (truth, j, k) order.
    pub fn rows(&self) -> Vec<CountRow> {
        let mut rows = Vec::new();
        for truth in [false, true] {
            for j in 0..=self.max_count_tracked {
                for k in 0..=self.max_count_tracked {
                    let tally = self.cells[self.index(truth, j, k)];
                    if tally > 0 {
                        rows.push(CountRow {
                            truth,
                            weak: j,
                            strong: k,
                            tally,
                        });
                    }
                }
            }
        }
        rows
    }

    /// CSV rendering with header `truth,j,k,tally`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("truth,j,k,tally\n");
        for row in self.rows() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.truth, row.weak, row.strong, row.tally
            ));
        }
        out
    }

    /// JSON rendering, including the overflow tallies and sample total.
    pub fn to_json(&self) -> String {
        let rows = self.rows();
        let view = TableView {
            total: self.total,
            max_count_tracked: self.max_count_tracked,
            overflow_when_false: self.overflow[0],
            overflow_when_true: self.overflow[1],
            cells: &rows,
        };
        serde_json::to_string_pretty(&view).expect("table view serializes")
    }
}

// Per-sample RNG: an independent ChaCha8 stream per sample index, so the
// draw sequence depends only on (seed, index).
fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn batch_ranges(samples: u64) -> Vec<(u64, u64)> {
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < samples {
        let end = (start + BATCH_SIZE).min(samples);
        ranges.push((start, end));
        start = end;
    }
    ranges
}

enum InterestSampler {
    Gamma(Gamma<f64>),
    Uniform(Uniform<f64>),
}

impl InterestSampler {
    fn new(prior: &InterestPrior) -> Result<Self> {
        match *prior {
            InterestPrior::Gamma { shape, rate } => {
                // rand_distr's Gamma uses the Marsaglia-Tsang squeeze method
                // for shape >= 1 and the shape-augmentation trick below 1.
                let gamma = Gamma::new(shape.value(), 1.0 / rate.value()).map_err(|e| {
                    Error::InvalidParameter(format!("gamma interest prior: {e}"))
                })?;
                Ok(Self::Gamma(gamma))
            }
            InterestPrior::Uniform { upper } => {
                Ok(Self::Uniform(Uniform::new(0.0, upper.value())))
            }
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Self::Gamma(d) => d.sample(rng),
            Self::Uniform(d) => d.sample(rng),
        }
    }
}

fn poisson_count(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let d = Poisson::new(mean).expect("positive finite mean");
    d.sample(rng) as u64
}

fn binomial_count(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    let d = Binomial::new(n, p).expect("probability in range");
    d.sample(rng)
}

/// Simulates the two-study-type generative model and tallies the joint
/// success counts. Deterministic given the config seed.
pub fn simulate_framework(
    params: &FrameworkParams,
    config: &SimulationConfig,
) -> Result<JointCountTable> {
    let sampler = InterestSampler::new(params.interest())?;
    let cw = params.weak_rate_multiplier();
    let prior = params.hypothesis_prior();
    let table = batch_ranges(config.samples)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = JointCountTable::new(config.max_count_tracked);
            for i in start..end {
                let mut rng = sample_rng(config.seed, i);
                let interest = sampler.sample(&mut rng);
                let weak_attempts = poisson_count(&mut rng, cw * interest);
                let strong_attempts = poisson_count(&mut rng, interest);
                let truth = rng.gen_bool(prior);
                let (weak_rate, strong_rate) = params.success_rates(truth);
                let j = binomial_count(&mut rng, weak_attempts, weak_rate);
                let k = binomial_count(&mut rng, strong_attempts, strong_rate);
                local.record(truth, j, k);
            }
            local
        })
        .reduce(
            || JointCountTable::new(config.max_count_tracked),
            JointCountTable::merge,
        );
    Ok(table)
}

/// Simulates the homogeneous p-value model, counting successes with
/// ρ ≥ `p_floor` and discarding (to overflow) any sample that produced a
/// success below the floor. The strong column of the table is always 0.
///
/// Requires the normal-shift power curve with the identity null: a false
/// hypothesis draws its test statistic from N(0, 1), a true one from
/// N(shift, 1), and ρ = 1 − Φ(T).
pub fn simulate_homogeneous(
    params: &HomogeneousParams,
    config: &SimulationConfig,
    p_floor: f64,
) -> Result<JointCountTable> {
    let PowerCurve::NormalShift { shift } = *params.power_curve() else {
        return Err(Error::Domain(
            "simulation requires the normal-shift power curve".into(),
        ));
    };
    if !matches!(params.null_curve(), NullCurve::Identity) {
        return Err(Error::Domain(
            "simulation requires the identity null curve".into(),
        ));
    }
    if !p_floor.is_finite() || p_floor < 0.0 || p_floor >= params.alpha() {
        return Err(Error::Domain(format!(
            "p_floor must satisfy 0 <= p_floor < alpha, got {p_floor}"
        )));
    }
    let (kappa, beta) = params.interest();
    let gamma_prior = Gamma::new(kappa, 1.0 / beta)
        .map_err(|e| Error::InvalidParameter(format!("gamma interest prior: {e}")))?;
    let prior = params.hypothesis_prior();
    // rho <= alpha  <=>  t >= t_success; rho >= p_floor  <=>  t <= t_ceiling
    let t_success = normal_quantile(1.0 - params.alpha())?;
    let t_ceiling = if p_floor == 0.0 {
        f64::INFINITY
    } else {
        normal_quantile(1.0 - p_floor)?
    };

    let table = batch_ranges(config.samples)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = JointCountTable::new(config.max_count_tracked);
            for i in start..end {
                let mut rng = sample_rng(config.seed, i);
                let interest = gamma_prior.sample(&mut rng);
                let attempts = poisson_count(&mut rng, interest);
                let truth = rng.gen_bool(prior);
                let offset = if truth { shift } else { 0.0 };
                let mut in_band = 0u64;
                let mut below_floor = false;
                for _ in 0..attempts {
                    let t: f64 = offset + rng.sample::<f64, _>(StandardNormal);
                    if t >= t_success {
                        if t > t_ceiling {
                            below_floor = true;
                            break;
                        }
                        in_band += 1;
                    }
                }
                if below_floor {
                    local.record_overflow(truth);
                } else {
                    local.record(truth, in_band, 0);
                }
            }
            local
        })
        .reduce(
            || JointCountTable::new(config.max_count_tracked),
            JointCountTable::merge,
        );
    Ok(table)
}

fn poisson_factor(count: u64, mean: f64) -> f64 {
    if mean <= 0.0 {
        return if count == 0 { 1.0 } else { 0.0 };
    }
    poisson_log_pmf(count, mean).map(f64::exp).unwrap_or(0.0)
}

/// Observation probability by adaptive quadrature of the defining mixture
/// integral: prior density times the two Poisson pmfs, truncated where the
/// tail is below 1e-12 of the mass.
///
/// This never touches the closed forms, so it serves as their oracle.
pub fn quadrature_observation_probability(
    params: &FrameworkParams,
    truth: bool,
    obs: Observation,
) -> Result<f64> {
    let (weak_rate, strong_rate) = params.success_rates(truth);
    let weak_rate = weak_rate * params.weak_rate_multiplier();
    let j = u64::from(obs.weak_successes);
    let k = u64::from(obs.strong_successes);
    match *params.interest() {
        InterestPrior::Gamma { shape, rate } => {
            let kappa = shape.value();
            let beta = rate.value();
            let ln_norm = kappa * beta.ln() - log_gamma(kappa)?;
            let density = move |interest: f64| {
                if interest <= 0.0 {
                    return 0.0;
                }
                (ln_norm + (kappa - 1.0) * interest.ln() - beta * interest).exp()
            };
            let integrand = move |interest: f64| {
                density(interest)
                    * poisson_factor(j, weak_rate * interest)
                    * poisson_factor(k, strong_rate * interest)
            };
            // Effective kernel is gamma-shaped with this shape and rate.
            let shape_eff = (j + k) as f64 + kappa;
            let rate_eff = beta + weak_rate + strong_rate;
            let upper = (shape_eff + 16.0 * shape_eff.sqrt() + 40.0) / rate_eff;
            integrate_maybe_substituted(integrand, upper, kappa)
        }
        InterestPrior::Uniform { upper } => {
            let c = upper.value();
            let q = quadrature::integrate(
                move |interest| {
                    poisson_factor(j, weak_rate * interest)
                        * poisson_factor(k, strong_rate * interest)
                        / c
                },
                0.0,
                c,
                QUAD_REL_TOL,
            )?;
            Ok(q.value)
        }
    }
}

/// Homogeneous-model observation probability by quadrature of the defining
/// integral: prior density, the no-success-below-p factor, and the Poisson
/// pmf of the in-band count.
pub fn quadrature_homogeneous_probability(
    params: &HomogeneousParams,
    truth: bool,
    j: u32,
    p: f64,
) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 || p >= params.alpha() {
        return Err(Error::Domain(format!(
            "p must satisfy 0 < p < alpha, got {p}"
        )));
    }
    let (at_alpha, at_p) = match (truth, params.power_curve(), params.null_curve()) {
        (true, curve, _) => (curve.evaluate(params.alpha())?, curve.evaluate(p)?),
        (false, _, null) => (null.evaluate(params.alpha()), null.evaluate(p)),
    };
    let band = (at_alpha - at_p).max(0.0);
    let (kappa, beta) = params.interest();
    let ln_norm = kappa * beta.ln() - log_gamma(kappa)?;
    let j = u64::from(j);
    let integrand = move |interest: f64| {
        if interest <= 0.0 {
            return 0.0;
        }
        let density = (ln_norm + (kappa - 1.0) * interest.ln() - beta * interest).exp();
        density * (-at_p * interest).exp() * poisson_factor(j, band * interest)
    };
    let shape_eff = j as f64 + kappa;
    let rate_eff = beta + at_alpha;
    let upper = (shape_eff + 16.0 * shape_eff.sqrt() + 40.0) / rate_eff;
    integrate_maybe_substituted(integrand, upper, kappa)
}

// For shapes below 1 the gamma density is singular at the origin; the
// substitution I = u^q with integer q >= 1/kappa removes it exactly.
fn integrate_maybe_substituted<F: Fn(f64) -> f64>(
    integrand: F,
    upper: f64,
    kappa: f64,
) -> Result<f64> {
    if kappa >= 1.0 {
        return Ok(quadrature::integrate(integrand, 0.0, upper, QUAD_REL_TOL)?.value);
    }
    let q = (1.0 / kappa).ceil();
    let transformed = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        integrand(u.powf(q)) * q * u.powf(q - 1.0)
    };
    let q_upper = upper.powf(1.0 / q);
    Ok(quadrature::integrate(transformed, 0.0, q_upper, QUAD_REL_TOL)?.value)
}

/// One count cell of a pmf agreement check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PmfCheckCell {
    /// The count value.
    pub count: u32,
    /// Observed tally.
    pub observed: u64,
    /// Expected tally under the reference pmf.
    pub expected: f64,
    /// Standardized deviation (binomial standard error).
    pub z: f64,
    /// Whether the cell meets the minimum expected tally to be judged.
    pub qualifying: bool,
}

/// Result of comparing an empirical count histogram against a reference pmf.
#[derive(Debug, Clone, Serialize)]
pub struct PmfCheckReport {
    /// Number of samples drawn.
    pub samples: u64,
    /// Cells up to the tracked maximum.
    pub cells: Vec<PmfCheckCell>,
    /// Largest |observed/n − expected/n| over all tracked cells.
    pub max_abs_deviation: f64,
    /// Standard-error multiplier a qualifying cell must stay within.
    pub se_multiplier: f64,
    /// Minimum expected tally for a cell to qualify.
    pub min_expected: f64,
    /// Whether every qualifying cell stayed within the band.
    pub passed: bool,
}

fn pmf_report(
    histogram: &[u64],
    samples: u64,
    pmf: impl Fn(u32) -> f64,
    se_multiplier: f64,
    min_expected: f64,
) -> PmfCheckReport {
    let n = samples as f64;
    let mut cells = Vec::with_capacity(histogram.len());
    let mut max_abs_deviation: f64 = 0.0;
    let mut passed = true;
    for (count, &observed) in histogram.iter().enumerate() {
        let probability = pmf(count as u32);
        let expected = probability * n;
        let se = (n * probability * (1.0 - probability)).sqrt();
        let z = if se > 0.0 {
            (observed as f64 - expected) / se
        } else {
            0.0
        };
        let qualifying = expected >= min_expected;
        if qualifying && z.abs() > se_multiplier {
            passed = false;
        }
        max_abs_deviation = max_abs_deviation.max((observed as f64 - expected).abs() / n);
        cells.push(PmfCheckCell {
            count: count as u32,
            observed,
            expected,
            z,
            qualifying,
        });
    }
    PmfCheckReport {
        samples,
        cells,
        max_abs_deviation,
        se_multiplier,
        min_expected,
        passed,
    }
}

/// Checks Poisson thinning empirically: draw ν ~ Poisson(λ), keep each of
/// the ν events with probability `p`, and compare the kept-count histogram
/// against Poisson(pλ). Qualifying cells (expected tally ≥ 100) must stay
/// within 4 standard errors.
pub fn poisson_thinning_check(
    lambda: f64,
    p: f64,
    config: &SimulationConfig,
) -> Result<PmfCheckReport> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    let thinned_mean = p * lambda;
    let track = (thinned_mean + 20.0 * thinned_mean.sqrt()).ceil() as usize + 2;
    let histogram = batch_ranges(config.samples)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = vec![0u64; track + 1];
            for i in start..end {
                let mut rng = sample_rng(config.seed, i);
                let attempts = poisson_count(&mut rng, lambda);
                let kept = binomial_count(&mut rng, attempts, p);
                let slot = (kept as usize).min(track);
                local[slot] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; track + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let pmf = move |count: u32| {
        if thinned_mean <= 0.0 {
            return if count == 0 { 1.0 } else { 0.0 };
        }
        poisson_pmf(u64::from(count), thinned_mean).unwrap_or(0.0)
    };
    Ok(pmf_report(
        &histogram[..track],
        config.samples,
        pmf,
        4.0,
        100.0,
    ))
}

/// Checks the gamma-Poisson conjugacy empirically: the count of attempts
/// driven by a Gamma(κ, β) interest level is negative-binomial with
/// failure count κ and success probability 1/(β+1). Qualifying cells
/// (expected tally ≥ 100) must stay within 3 standard errors.
pub fn negative_binomial_marginal_check(
    shape: f64,
    rate: f64,
    config: &SimulationConfig,
) -> Result<PmfCheckReport> {
    if !shape.is_finite() || shape <= 0.0 || !rate.is_finite() || rate <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma prior requires shape > 0 and rate > 0, got ({shape}, {rate})"
        )));
    }
    let gamma_prior = Gamma::new(shape, 1.0 / rate)
        .map_err(|e| Error::InvalidParameter(format!("gamma interest prior: {e}")))?;
    let mean = shape / rate;
    let variance = mean + mean * mean / shape;
    let track = (mean + 20.0 * variance.sqrt()).ceil() as usize + 2;
    let histogram = batch_ranges(config.samples)
        .into_par_iter()
        .map(|(start, end)| {
            let mut local = vec![0u64; track + 1];
            for i in start..end {
                let mut rng = sample_rng(config.seed, i);
                let interest = gamma_prior.sample(&mut rng);
                let attempts = poisson_count(&mut rng, interest);
                let slot = (attempts as usize).min(track);
                local[slot] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; track + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let ln_success = -(rate + 1.0).ln();
    let ln_failure = (rate / (rate + 1.0)).ln();
    let pmf = move |count: u32| {
        let n = f64::from(count);
        let ln_pmf = log_gamma(n + shape).unwrap() - log_gamma(shape).unwrap()
            - log_gamma(n + 1.0).unwrap()
            + shape * ln_failure
            + n * ln_success;
        ln_pmf.exp()
    };
    Ok(pmf_report(
        &histogram[..track],
        config.samples,
        pmf,
        3.0,
        100.0,
    ))
}

/// Closed form versus empirical posterior for one cell.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PosteriorComparison {
    /// Weak-success count j.
    pub weak: u32,
    /// Strong-success count k.
    pub strong: u32,
    /// Samples in the cell.
    pub occupants: u64,
    /// Empirical Pr(true | cell).
    pub empirical: f64,
    /// Closed-form posterior.
    pub expected: f64,
    /// Binomial standard error sqrt(expected(1-expected)/occupants).
    pub standard_error: f64,
    /// Standardized deviation.
    pub z: f64,
    /// Whether the cell has enough occupants to be judged.
    pub sufficient: bool,
}

/// Compares the empirical conditional posterior in every occupied cell of a
/// framework simulation against the closed form.
pub fn compare_framework_posteriors(
    params: &FrameworkParams,
    table: &JointCountTable,
) -> Result<Vec<PosteriorComparison>> {
    let mut out = Vec::new();
    for j in 0..=table.max_count_tracked() {
        for k in 0..=table.max_count_tracked() {
            let occupants = table.occupants(j, k).unwrap_or(0);
            if occupants == 0 {
                continue;
            }
            let empirical = table.empirical_posterior(j, k).unwrap();
            let expected = crate::framework::posterior(params, Observation::new(j, k))?;
            out.push(comparison_row(j, k, occupants, empirical, expected));
        }
    }
    Ok(out)
}

/// Same comparison for a homogeneous simulation (cells are j only).
pub fn compare_homogeneous_posteriors(
    params: &HomogeneousParams,
    table: &JointCountTable,
    p_floor: f64,
) -> Result<Vec<PosteriorComparison>> {
    let mut out = Vec::new();
    for j in 0..=table.max_count_tracked() {
        let occupants = table.occupants(j, 0).unwrap_or(0);
        if occupants == 0 {
            continue;
        }
        let empirical = table.empirical_posterior(j, 0).unwrap();
        let expected = crate::homogeneous::homogeneous_posterior(params, j, p_floor)?;
        out.push(comparison_row(j, 0, occupants, empirical, expected));
    }
    Ok(out)
}

fn comparison_row(
    weak: u32,
    strong: u32,
    occupants: u64,
    empirical: f64,
    expected: f64,
) -> PosteriorComparison {
    let standard_error = (expected * (1.0 - expected) / occupants as f64).sqrt();
    let z = if standard_error > 0.0 {
        (empirical - expected) / standard_error
    } else {
        0.0
    };
    PosteriorComparison {
        weak,
        strong,
        occupants,
        empirical,
        expected,
        standard_error,
        z,
        sufficient: occupants >= MIN_CELL_OCCUPANTS,
    }
}
