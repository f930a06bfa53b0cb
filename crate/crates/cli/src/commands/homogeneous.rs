//! `evidence homogeneous`: the single-study-type model where evidence
//! strength is the achieved p-value.

use evidence_core::{
    homogeneous_likelihood_ratio, homogeneous_paradox_threshold, homogeneous_posterior,
    shift_from_design, CurveTable, HomogeneousParams, NullCurve, ParadoxRegime, PowerCurve,
};
use serde::Serialize;

use crate::args::HomogeneousArgs;
use crate::config::{self, need, pick, HomogeneousConfig};
use crate::error::{CliError, CliResult};
use crate::output::{parse_interest, render, sig, sig_opt};

const DEFAULT_J_MAX: u32 = 8;

#[derive(Serialize)]
struct RegimeReport {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<f64>,
}

fn regime_report(regime: ParadoxRegime) -> RegimeReport {
    match regime {
        ParadoxRegime::BelowThreshold(t) => RegimeReport {
            kind: "below_threshold",
            threshold: Some(t),
        },
        ParadoxRegime::AllRates => RegimeReport {
            kind: "all_rates",
            threshold: None,
        },
        ParadoxRegime::AboveThreshold(t) => RegimeReport {
            kind: "above_threshold",
            threshold: Some(t),
        },
        ParadoxRegime::NoRates => RegimeReport {
            kind: "no_rates",
            threshold: None,
        },
    }
}

#[derive(Serialize)]
struct Cell {
    j: u32,
    likelihood_ratio: f64,
    posterior: f64,
}

#[derive(Serialize)]
struct HomogeneousReport {
    alpha: f64,
    p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_table: Option<String>,
    interest: String,
    prior: f64,
    gamma_alpha: f64,
    gamma_p: f64,
    threshold_exact: RegimeReport,
    threshold_sufficient: RegimeReport,
    paradoxical: bool,
    cells: Vec<Cell>,
}

pub fn run(args: HomogeneousArgs) -> CliResult<i32> {
    let file: HomogeneousConfig = config::load(args.common.config.as_ref())?;
    let alpha = need("alpha", args.alpha, file.alpha)?;
    let p = need("p", args.p, file.p)?;
    let prior = need("prior", args.prior, file.prior)?;
    let interest_spec = need("interest", args.interest.clone(), file.interest.clone())?;
    let interest = parse_interest(&interest_spec)?;
    let evidence_core::InterestPrior::Gamma { rate, .. } = interest else {
        return Err(CliError::Validation(
            "the homogeneous model requires `--interest gamma:<shape>,<rate>`".into(),
        ));
    };
    let j_max = pick(args.j_max, file.j_max).unwrap_or(DEFAULT_J_MAX);

    // Power curve: an explicit shift, a shift derived from the design, or a
    // tabulated curve.
    let effect = pick(args.effect, file.effect);
    let sd = pick(args.sd, file.sd);
    let n = pick(args.n, file.n);
    let shift_flag = pick(args.shift, file.shift);
    let table_path = pick(args.power_table.clone(), file.power_table.clone());

    let (power_curve, shift, table_name) = match (shift_flag, &table_path, effect) {
        (Some(_), Some(_), _) => {
            return Err(CliError::Validation(
                "`--shift` and `--power-table` are mutually exclusive".into(),
            ))
        }
        (Some(shift), None, _) => (PowerCurve::normal_shift(shift)?, Some(shift), None),
        (None, Some(path), _) => {
            let table = CurveTable::from_csv_path(path)?;
            (
                PowerCurve::table(table),
                None,
                Some(path.display().to_string()),
            )
        }
        (None, None, Some(effect)) => {
            let sd = sd.ok_or_else(|| CliError::Validation("`effect` requires `sd`".into()))?;
            let n = n.ok_or_else(|| CliError::Validation("`effect` requires `n`".into()))?;
            let shift = shift_from_design(effect, sd, n)?;
            (PowerCurve::normal_shift(shift)?, Some(shift), None)
        }
        (None, None, None) => {
            return Err(CliError::Validation(
                "supply `--shift`, `--power-table`, or `--effect --sd --n`".into(),
            ))
        }
    };

    let params = HomogeneousParams::new(
        alpha,
        power_curve.clone(),
        NullCurve::Identity,
        prior,
        interest,
    )?;
    let gamma_alpha = power_curve.evaluate(alpha)?;
    let gamma_p = power_curve.evaluate(p)?;
    let threshold = homogeneous_paradox_threshold(alpha, p, &power_curve, &NullCurve::Identity)?;
    let paradoxical = threshold.exact.contains(rate.value());

    let mut cells = Vec::with_capacity(j_max as usize + 1);
    for j in 0..=j_max {
        cells.push(Cell {
            j,
            likelihood_ratio: homogeneous_likelihood_ratio(&params, j, p)?,
            posterior: homogeneous_posterior(&params, j, p)?,
        });
    }

    let report = HomogeneousReport {
        alpha,
        p,
        shift,
        power_table: table_name,
        interest: interest_spec,
        prior,
        gamma_alpha,
        gamma_p,
        threshold_exact: regime_report(threshold.exact),
        threshold_sufficient: regime_report(threshold.sufficient),
        paradoxical,
        cells,
    };
    render(&args.common, &report, || to_csv(&report))?;
    Ok(0)
}

fn to_csv(report: &HomogeneousReport) -> String {
    let mut out =
        String::from("j,likelihood_ratio,posterior,gamma_alpha,gamma_p,threshold,paradox,shift\n");
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            cell.j,
            sig(cell.likelihood_ratio),
            sig(cell.posterior),
            sig(report.gamma_alpha),
            sig(report.gamma_p),
            sig_opt(report.threshold_exact.threshold),
            report.paradoxical,
            sig_opt(report.shift),
        ));
    }
    out
}
