//! Single-study-type framework where evidence strength is carried by the
//! achieved p-value: a success reports ρ in (0, α], the hypothesis-true
//! distribution of ρ comes from a power curve γ(x), and observing only weak
//! p-values (ρ ≥ p) can flip into evidence against the hypothesis.

use crate::error::{Error, Result};
use crate::framework::InterestPrior;
use crate::numerics::{log_gamma, normal_cdf, normal_quantile, Probability};

/// Tolerance for the a(α) = α anchor of a tabulated null curve.
const NULL_ANCHOR_TOL: f64 = 1e-9;

/// A monotone table of (x, value) knots with strictly increasing x,
/// interpolated piecewise-linearly and clamped at the endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    points: Vec<(f64, f64)>,
}

impl CurveTable {
    /// Validates the knots: strictly increasing x in (0, 1), values in
    /// [0, 1] and nondecreasing.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidTable("table has no rows".into()));
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() || x <= 0.0 || x >= 1.0 {
                return Err(Error::InvalidTable(format!(
                    "x values must lie in (0, 1), row {i} has {x}"
                )));
            }
            if !y.is_finite() || !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidTable(format!(
                    "curve values must lie in [0, 1], row {i} has {y}"
                )));
            }
            if i > 0 {
                let (px, py) = points[i - 1];
                if x <= px {
                    return Err(Error::InvalidTable(format!(
                        "x values must be strictly increasing, row {i}: {px} then {x}"
                    )));
                }
                if y < py {
                    return Err(Error::InvalidTable(format!(
                        "curve values must be nondecreasing, row {i}: {py} then {y}"
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    /// Parses a two-column CSV with a mandatory header row.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("empty table file".into()))?;
        if header.split(',').count() != 2 {
            return Err(Error::InvalidTable(format!(
                "expected a two-column header row, got `{header}`"
            )));
        }
        let mut points = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let mut fields = line.split(',');
            let x = fields.next().map(str::trim);
            let y = fields.next().map(str::trim);
            let (Some(x), Some(y), None) = (x, y, fields.next()) else {
                return Err(Error::InvalidTable(format!(
                    "row {}: expected exactly two columns",
                    lineno + 2
                )));
            };
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    Error::InvalidTable(format!("row {}: `{s}` is not a number", lineno + 2))
                })
            };
            points.push((parse(x)?, parse(y)?));
        }
        Self::new(points)
    }

    /// Reads a table from a CSV file on disk.
    pub fn from_csv_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidTable(format!("{}: {e}", path.display())))?;
        Self::from_csv_str(&text)
    }

    /// Piecewise-linear evaluation with endpoint clamping.
    pub fn evaluate(&self, x: f64) -> f64 {
        let first = self.points[0];
        let last = self.points[self.points.len() - 1];
        if x <= first.0 {
            return first.1;
        }
        if x >= last.0 {
            return last.1;
        }
        let idx = self.points.partition_point(|&(px, _)| px < x);
        let (x1, y1) = self.points[idx];
        if x1 == x {
            return y1;
        }
        let (x0, y0) = self.points[idx - 1];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// The knots.
    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Power function x ↦ γ(x): the probability that a study of a true
/// hypothesis achieves significance below x.
#[derive(Debug, Clone, PartialEq)]
pub enum PowerCurve {
    /// γ(x) = 1 − Φ(Φ⁻¹(1 − x) − shift), the large-sample one-sided
    /// test curve with standardized mean shift.
    NormalShift {
        /// Standardized effect: effect·√n / sd.
        shift: f64,
    },
    /// User-supplied knots, interpolated piecewise-linearly.
    Table(CurveTable),
}

impl PowerCurve {
    /// Normal-shift curve; `shift` must be finite and ≥ 0.
    pub fn normal_shift(shift: f64) -> Result<Self> {
        if !shift.is_finite() || shift < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "shift must be finite and >= 0, got {shift}"
            )));
        }
        Ok(Self::NormalShift { shift })
    }

    /// Tabulated curve.
    pub fn table(table: CurveTable) -> Self {
        Self::Table(table)
    }

    /// γ(x) for x in (0, 1).
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match self {
            Self::NormalShift { shift } => normal_shift_power(x, *shift),
            Self::Table(table) => {
                if !x.is_finite() || x <= 0.0 || x >= 1.0 {
                    return Err(Error::Domain(format!(
                        "power curve argument must lie in (0, 1), got {x}"
                    )));
                }
                Ok(table.evaluate(x))
            }
        }
    }
}

/// Null distribution function x ↦ a(x): the probability that a study of a
/// false hypothesis reports ρ < x.  Must satisfy a(x) ≤ x.
#[derive(Debug, Clone, PartialEq)]
pub enum NullCurve {
    /// a(x) = x, the exact uniform null.
    Identity,
    /// Tabulated null curve.
    Table(CurveTable),
}

impl NullCurve {
    /// Tabulated variant; every knot must satisfy a(x) ≤ x.
    pub fn table(table: CurveTable) -> Result<Self> {
        for &(x, y) in table.points() {
            if y > x {
                return Err(Error::InvalidTable(format!(
                    "null curve must satisfy a(x) <= x, got a({x}) = {y}"
                )));
            }
        }
        Ok(Self::Table(table))
    }

    /// a(x).
    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            Self::Identity => x,
            Self::Table(table) => table.evaluate(x),
        }
    }
}

/// Parameters of the homogeneous p-value framework.
#[derive(Debug, Clone)]
pub struct HomogeneousParams {
    alpha: Probability,
    power_curve: PowerCurve,
    null_curve: NullCurve,
    hypothesis_prior: Probability,
    interest_shape: f64,
    interest_rate: f64,
}

impl HomogeneousParams {
    /// Builds the parameter set.  The interest prior must be the gamma
    /// variant, and a tabulated null curve must anchor a(α) = α.
    pub fn new(
        alpha: f64,
        power_curve: PowerCurve,
        null_curve: NullCurve,
        hypothesis_prior: f64,
        interest: InterestPrior,
    ) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "publication cutoff alpha must lie in (0, 1), got {alpha}"
            )));
        }
        if !hypothesis_prior.is_finite() || hypothesis_prior <= 0.0 || hypothesis_prior >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "hypothesis prior must lie strictly in (0, 1), got {hypothesis_prior}"
            )));
        }
        let InterestPrior::Gamma { shape, rate } = interest else {
            return Err(Error::WrongPrior { expected: "gamma" });
        };
        if (null_curve.evaluate(alpha) - alpha).abs() > NULL_ANCHOR_TOL {
            return Err(Error::InvalidTable(format!(
                "null curve must satisfy a(alpha) = alpha at alpha = {alpha}, got {}",
                null_curve.evaluate(alpha)
            )));
        }
        power_curve.evaluate(alpha)?;
        Ok(Self {
            alpha: Probability::new(alpha)?,
            power_curve,
            null_curve,
            hypothesis_prior: Probability::new(hypothesis_prior)?,
            interest_shape: shape.value(),
            interest_rate: rate.value(),
        })
    }

    /// Publication cutoff α.
    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    /// The power curve γ(·).
    pub fn power_curve(&self) -> &PowerCurve {
        &self.power_curve
    }

    /// The null curve a(·).
    pub fn null_curve(&self) -> &NullCurve {
        &self.null_curve
    }

    /// Prior probability of the hypothesis.
    pub fn hypothesis_prior(&self) -> f64 {
        self.hypothesis_prior.value()
    }

    /// Gamma interest prior (shape κ, rate β).
    pub fn interest(&self) -> (f64, f64) {
        (self.interest_shape, self.interest_rate)
    }

    fn check_p(&self, p: f64) -> Result<()> {
        if !p.is_finite() || p <= 0.0 || p >= self.alpha() {
            return Err(Error::Domain(format!(
                "p-value floor must satisfy 0 < p < alpha = {}, got {p}",
                self.alpha()
            )));
        }
        Ok(())
    }
}

/// Power of a one-sided normal test with standardized shift:
/// γ(x) = 1 − Φ(Φ⁻¹(1 − x) − shift).
pub fn normal_shift_power(x: f64, shift: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 || x >= 1.0 {
        return Err(Error::Domain(format!(
            "significance level must lie in (0, 1), got {x}"
        )));
    }
    if !shift.is_finite() {
        return Err(Error::Domain("shift must be finite".into()));
    }
    Ok(1.0 - normal_cdf(normal_quantile(1.0 - x)? - shift))
}

/// Standardized shift of a paired one-sided test: effect·√n / sd.
pub fn shift_from_design(effect: f64, sd: f64, n: u32) -> Result<f64> {
    if !effect.is_finite() || effect <= 0.0 {
        return Err(Error::Domain(format!("effect must be > 0, got {effect}")));
    }
    if !sd.is_finite() || sd <= 0.0 {
        return Err(Error::Domain(format!("sd must be > 0, got {sd}")));
    }
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    Ok(effect * f64::from(n).sqrt() / sd)
}

/// Probability of observing exactly j successes, all with ρ ≥ p, under the
/// given truth value, marginalized over the gamma interest prior.
pub fn homogeneous_observation_probability(
    params: &HomogeneousParams,
    truth: bool,
    j: u32,
    p: f64,
) -> Result<f64> {
    params.check_p(p)?;
    let (band, total) = band_and_total(params, truth, p)?;
    let (kappa, beta) = params.interest();
    let jf = j as f64;
    let mut ln_r = kappa * beta.ln() + log_gamma(jf + kappa)? - log_gamma(kappa)?
        - log_gamma(jf + 1.0)?
        - (jf + kappa) * (beta + total).ln();
    if j > 0 {
        if band <= 0.0 {
            return Ok(0.0);
        }
        ln_r += jf * band.ln();
    }
    Ok(ln_r.exp())
}

/// Likelihood ratio R_true / R_false of observing exactly j successes all
/// with ρ ≥ p.
pub fn homogeneous_likelihood_ratio(params: &HomogeneousParams, j: u32, p: f64) -> Result<f64> {
    params.check_p(p)?;
    let (band_true, total_true) = band_and_total(params, true, p)?;
    let (band_false, total_false) = band_and_total(params, false, p)?;
    let (kappa, beta) = params.interest();
    let jf = j as f64;
    let mut ln_lr = (jf + kappa) * ((beta + total_false) / (beta + total_true)).ln();
    if j > 0 {
        if band_false <= 0.0 {
            return Err(Error::Domain(
                "null curve puts zero mass on [p, alpha]; likelihood ratio diverges".into(),
            ));
        }
        if band_true <= 0.0 {
            return Ok(0.0);
        }
        ln_lr += jf * (band_true / band_false).ln();
    }
    Ok(ln_lr.exp())
}

/// Posterior probability of the hypothesis after observing exactly j
/// successes, all with ρ ≥ p.
pub fn homogeneous_posterior(params: &HomogeneousParams, j: u32, p: f64) -> Result<f64> {
    crate::classical::posterior_from_lr(
        params.hypothesis_prior(),
        homogeneous_likelihood_ratio(params, j, p)?,
    )
}

// Band mass G(alpha) - G(p) and total success mass G(alpha), with G the
// power curve under truth and the null curve otherwise.
fn band_and_total(params: &HomogeneousParams, truth: bool, p: f64) -> Result<(f64, f64)> {
    let (at_alpha, at_p) = if truth {
        (
            params.power_curve().evaluate(params.alpha())?,
            params.power_curve().evaluate(p)?,
        )
    } else {
        (
            params.null_curve().evaluate(params.alpha()),
            params.null_curve().evaluate(p),
        )
    };
    Ok(((at_alpha - at_p).max(0.0), at_alpha))
}

/// How the paradox region depends on the gamma-prior rate β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParadoxRegime {
    /// Paradoxical exactly for rates strictly below the bound.
    BelowThreshold(f64),
    /// The weak band already carries a per-success likelihood ratio ≤ 1,
    /// so every rate is paradoxical.
    AllRates,
    /// Paradoxical only for rates strictly above the bound (requires a
    /// design whose weak band favors the null).
    AboveThreshold(f64),
    /// No positive rate produces the paradox.
    NoRates,
}

impl ParadoxRegime {
    /// Whether a gamma prior with this rate is inside the paradox region.
    pub fn contains(&self, rate: f64) -> bool {
        match *self {
            Self::BelowThreshold(bound) => rate < bound,
            Self::AllRates => true,
            Self::AboveThreshold(bound) => rate > bound,
            Self::NoRates => false,
        }
    }

    /// The finite rate bound, when one exists.
    pub fn threshold(&self) -> Option<f64> {
        match *self {
            Self::BelowThreshold(bound) | Self::AboveThreshold(bound) => Some(bound),
            _ => None,
        }
    }
}

/// The paradox region in both forms: `exact` uses the configured null
/// curve's a(p); `sufficient` substitutes the conservative a(p) = p, the
/// displayed closed-form bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousThreshold {
    /// Region computed from the exact null curve.
    pub exact: ParadoxRegime,
    /// Region from the conservative substitution a(p) := p.
    pub sufficient: ParadoxRegime,
}

/// Paradox threshold of the homogeneous framework at weak floor `p`:
/// β < (α γ(p) − p γ(α)) / ((γ(α) − γ(p)) − (α − p)) in the standard
/// regime, with the degenerate regimes classified explicitly.
pub fn homogeneous_paradox_threshold(
    alpha: f64,
    p: f64,
    power_curve: &PowerCurve,
    null_curve: &NullCurve,
) -> Result<HomogeneousThreshold> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if !p.is_finite() || p <= 0.0 || p >= alpha {
        return Err(Error::Domain(format!(
            "p must satisfy 0 < p < alpha = {alpha}, got {p}"
        )));
    }
    let gamma_alpha = power_curve.evaluate(alpha)?;
    let gamma_p = power_curve.evaluate(p)?;
    let a_alpha = null_curve.evaluate(alpha);
    let exact = regime(a_alpha, null_curve.evaluate(p), gamma_alpha, gamma_p);
    let sufficient = regime(a_alpha, p, gamma_alpha, gamma_p);
    Ok(HomogeneousThreshold { exact, sufficient })
}

// The paradox condition is beta * slope > intercept with
// slope = (a_alpha - a_p) - (gamma_alpha - gamma_p) and
// intercept = a_p * gamma_alpha - a_alpha * gamma_p.
fn regime(a_alpha: f64, a_p: f64, gamma_alpha: f64, gamma_p: f64) -> ParadoxRegime {
    let slope = (a_alpha - a_p) - (gamma_alpha - gamma_p);
    let intercept = a_p * gamma_alpha - a_alpha * gamma_p;
    if slope < 0.0 {
        let bound = intercept / slope;
        if bound > 0.0 {
            ParadoxRegime::BelowThreshold(bound)
        } else {
            ParadoxRegime::NoRates
        }
    } else if slope == 0.0 {
        if intercept < 0.0 {
            ParadoxRegime::AllRates
        } else {
            ParadoxRegime::NoRates
        }
    } else if intercept <= 0.0 {
        ParadoxRegime::AllRates
    } else {
        ParadoxRegime::AboveThreshold(intercept / slope)
    }
}

/// Executable witness of the normal-tail ratio monotonicity: checks that
/// γ(p)/p > γ(α)/α at every grid point, which must hold for any positive
/// shift.
pub fn ratio_monotonicity_check(shift: f64, alpha: f64, grid: &[f64]) -> Result<bool> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let reference = normal_shift_power(alpha, shift)? / alpha;
    for &p in grid {
        if !p.is_finite() || p <= 0.0 || p >= alpha {
            return Err(Error::Domain(format!(
                "grid values must lie in (0, alpha), got {p}"
            )));
        }
        if normal_shift_power(p, shift)? / p <= reference {
            return Ok(false);
        }
    }
    Ok(true)
}
