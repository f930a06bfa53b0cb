//! `evidence posterior`: posteriors and likelihood ratios for exact
//! observation cells, with the paradox classification.

use evidence_core::{
    is_paradoxical, is_paradoxical_uniform_up_to, likelihood_ratio, paradox_rate_threshold,
    posterior, InterestPrior, Observation,
};
use serde::Serialize;

use crate::args::PosteriorArgs;
use crate::commands::{resolve_framework, FrameworkEcho};
use crate::config::{self, pick, PosteriorConfig};
use crate::error::{CliError, CliResult};
use crate::output::{render, sig, sig_opt};

#[derive(Serialize)]
struct Cell {
    j: u32,
    k: u32,
    likelihood_ratio: f64,
    posterior: f64,
}

#[derive(Serialize)]
struct ParadoxUpTo {
    max_total: u32,
    holds: bool,
}

#[derive(Serialize)]
struct PosteriorReport {
    #[serde(flatten)]
    params: FrameworkEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paradoxical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paradox_up_to: Option<ParadoxUpTo>,
    cells: Vec<Cell>,
}

pub fn run(args: PosteriorArgs) -> CliResult<i32> {
    let file: PosteriorConfig = config::load(args.common.config.as_ref())?;
    let (params, echo) = resolve_framework(&args.framework, &file.framework)?;

    let j_values = resolve_counts("j", pick(args.j, file.j), pick(args.j_max, file.j_max))?;
    let k_values = resolve_counts("k", pick(args.k, file.k), pick(args.k_max, file.k_max))?;

    let mut cells = Vec::with_capacity(j_values.len() * k_values.len());
    for &j in &j_values {
        for &k in &k_values {
            let obs = Observation::new(j, k);
            cells.push(Cell {
                j,
                k,
                likelihood_ratio: likelihood_ratio(&params, obs)?,
                posterior: posterior(&params, obs)?,
            });
        }
    }

    let report = match params.interest() {
        InterestPrior::Gamma { .. } => PosteriorReport {
            params: echo,
            beta_star: Some(paradox_rate_threshold(params.weak(), params.strong())?),
            paradoxical: Some(is_paradoxical(&params)?),
            paradox_up_to: None,
            cells,
        },
        InterestPrior::Uniform { .. } => {
            let max_total =
                j_values.last().copied().unwrap_or(0) + k_values.last().copied().unwrap_or(0);
            let holds = is_paradoxical_uniform_up_to(&params, max_total)?;
            PosteriorReport {
                params: echo,
                beta_star: None,
                paradoxical: None,
                paradox_up_to: Some(ParadoxUpTo { max_total, holds }),
                cells,
            }
        }
    };
    render(&args.common, &report, || to_csv(&report))?;
    Ok(0)
}

fn resolve_counts(name: &str, exact: Option<u32>, max: Option<u32>) -> CliResult<Vec<u32>> {
    match (exact, max) {
        (_, Some(max)) => Ok((0..=max).collect()),
        (Some(value), None) => Ok(vec![value]),
        (None, None) => Err(CliError::Validation(format!(
            "missing required parameter `{name}` (or `{name}-max` for a table)"
        ))),
    }
}

fn to_csv(report: &PosteriorReport) -> String {
    let paradox = report
        .paradoxical
        .or(report.paradox_up_to.as_ref().map(|p| p.holds));
    let mut out = String::from("j,k,likelihood_ratio,posterior,paradox,beta_star\n");
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell.j,
            cell.k,
            sig(cell.likelihood_ratio),
            sig(cell.posterior),
            paradox.map(|b| b.to_string()).unwrap_or_default(),
            sig_opt(report.beta_star),
        ));
    }
    out
}
