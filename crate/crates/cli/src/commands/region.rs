//! `evidence region`: sweep the gamma-prior rate (and optionally the
//! shape) and report where the paradox holds.  The critical rate is
//! shape-independent, so the flip column moves only with beta.

use evidence_core::{
    is_paradoxical, paradox_rate_threshold, posterior, ErrorRates, FrameworkParams,
    InterestPrior, Observation,
};
use serde::Serialize;

use crate::args::RegionArgs;
use crate::config::{self, need, pick, RegionConfig};
use crate::error::{CliError, CliResult};
use crate::output::{parse_grid, parse_interest, render, sig};

#[derive(Serialize)]
struct RegionRow {
    beta: f64,
    kappa: f64,
    paradox: bool,
    posterior_1_0: f64,
    posterior_0_0: f64,
}

#[derive(Serialize)]
struct RegionReport {
    alpha_weak: f64,
    gamma_weak: f64,
    alpha_strong: f64,
    gamma_strong: f64,
    cw: f64,
    prior: f64,
    beta_star: f64,
    rows: Vec<RegionRow>,
}

pub fn run(args: RegionArgs) -> CliResult<i32> {
    let file: RegionConfig = config::load(args.common.config.as_ref())?;
    let fw = &args.framework;
    let alpha_weak = need("alpha-weak", fw.alpha_weak, file.framework.alpha_weak)?;
    let gamma_weak = need("gamma-weak", fw.gamma_weak, file.framework.gamma_weak)?;
    let alpha_strong = need("alpha-strong", fw.alpha_strong, file.framework.alpha_strong)?;
    let gamma_strong = need("gamma-strong", fw.gamma_strong, file.framework.gamma_strong)?;
    let cw = need("cw", fw.cw, file.framework.cw)?;
    let prior = need("prior", fw.prior, file.framework.prior)?;

    // The shape defaults to the --interest gamma shape when one is given.
    let base_kappa = match pick(fw.interest.clone(), file.framework.interest.clone()) {
        Some(spec) => match parse_interest(&spec)? {
            InterestPrior::Gamma { shape, .. } => shape.value(),
            InterestPrior::Uniform { .. } => {
                return Err(CliError::Validation(
                    "`region` sweeps a gamma prior; `--interest` must be gamma:<shape>,<rate>"
                        .into(),
                ))
            }
        },
        None => 1.0,
    };

    let beta_spec = need("beta-grid", args.beta_grid, file.beta_grid)?;
    let betas = parse_grid("beta-grid", &beta_spec)?;
    let kappas = match pick(args.kappa_grid, file.kappa_grid) {
        Some(spec) => parse_grid("kappa-grid", &spec)?,
        None => vec![base_kappa],
    };

    let weak = ErrorRates::new(alpha_weak, gamma_weak)?;
    let strong = ErrorRates::new(alpha_strong, gamma_strong)?;
    let beta_star = paradox_rate_threshold(&weak, &strong)?;

    let mut rows = Vec::with_capacity(betas.len() * kappas.len());
    for &kappa in &kappas {
        for &beta in &betas {
            let params = FrameworkParams::new(
                weak,
                strong,
                cw,
                prior,
                InterestPrior::gamma(kappa, beta)?,
            )?;
            rows.push(RegionRow {
                beta,
                kappa,
                paradox: is_paradoxical(&params)?,
                posterior_1_0: posterior(&params, Observation::new(1, 0))?,
                posterior_0_0: posterior(&params, Observation::new(0, 0))?,
            });
        }
    }

    let report = RegionReport {
        alpha_weak,
        gamma_weak,
        alpha_strong,
        gamma_strong,
        cw,
        prior,
        beta_star,
        rows,
    };
    render(&args.common, &report, || to_csv(&report))?;
    Ok(0)
}

fn to_csv(report: &RegionReport) -> String {
    let mut out = String::from("beta,kappa,paradox,posterior_1_0,posterior_0_0,beta_star\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sig(row.beta),
            sig(row.kappa),
            row.paradox,
            sig(row.posterior_1_0),
            sig(row.posterior_0_0),
            sig(report.beta_star),
        ));
    }
    out
}
