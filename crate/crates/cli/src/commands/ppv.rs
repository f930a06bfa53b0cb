//! `evidence ppv`: classical positive predictive values for one design.

use evidence_core::{
    likelihood_ratio_at_least_one, likelihood_ratio_exactly_j, likelihood_ratio_single,
    posterior_from_lr, ErrorRates,
};
use serde::Serialize;

use crate::args::PpvArgs;
use crate::config::{self, need, pick, PpvConfig};
use crate::error::{CliError, CliResult};
use crate::output::{render, sig};

#[derive(Serialize)]
struct Scenario {
    likelihood_ratio: f64,
    posterior: f64,
}

#[derive(Serialize)]
struct CountedScenario {
    n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<u32>,
    likelihood_ratio: f64,
    posterior: f64,
}

#[derive(Serialize)]
struct PpvReport {
    alpha: f64,
    gamma: f64,
    prior: f64,
    single: Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_least_one: Option<CountedScenario>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exactly_j: Option<CountedScenario>,
}

pub fn run(args: PpvArgs) -> CliResult<i32> {
    let file: PpvConfig = config::load(args.common.config.as_ref())?;
    let alpha = need("alpha", args.alpha, file.alpha)?;
    let gamma = need("gamma", args.gamma, file.gamma)?;
    let prior = need("prior", args.prior, file.prior)?;
    let n = pick(args.n, file.n);
    let j = pick(args.j, file.j);

    let rates = ErrorRates::new(alpha, gamma)?;
    let lr = likelihood_ratio_single(&rates);
    let single = Scenario {
        likelihood_ratio: lr,
        posterior: posterior_from_lr(prior, lr)?,
    };
    let at_least_one = match n {
        Some(n) => {
            let lr = likelihood_ratio_at_least_one(&rates, n)?;
            Some(CountedScenario {
                n,
                j: None,
                likelihood_ratio: lr,
                posterior: posterior_from_lr(prior, lr)?,
            })
        }
        None => None,
    };
    let exactly_j = match (n, j) {
        (Some(n), Some(j)) => {
            let lr = likelihood_ratio_exactly_j(&rates, n, j)?;
            Some(CountedScenario {
                n,
                j: Some(j),
                likelihood_ratio: lr,
                posterior: posterior_from_lr(prior, lr)?,
            })
        }
        (None, Some(_)) => {
            return Err(CliError::Validation(
                "`j` requires `n` (the number of studies attempted)".into(),
            ))
        }
        _ => None,
    };

    let report = PpvReport {
        alpha,
        gamma,
        prior,
        single,
        at_least_one,
        exactly_j,
    };
    render(&args.common, &report, || to_csv(&report))?;
    Ok(0)
}

fn to_csv(report: &PpvReport) -> String {
    let mut out = String::from("scenario,n,j,likelihood_ratio,posterior\n");
    out.push_str(&format!(
        "single,,,{},{}\n",
        sig(report.single.likelihood_ratio),
        sig(report.single.posterior)
    ));
    if let Some(s) = &report.at_least_one {
        out.push_str(&format!(
            "at_least_one,{},,{},{}\n",
            s.n,
            sig(s.likelihood_ratio),
            sig(s.posterior)
        ));
    }
    if let Some(s) = &report.exactly_j {
        out.push_str(&format!(
            "exactly_j,{},{},{},{}\n",
            s.n,
            s.j.unwrap_or_default(),
            sig(s.likelihood_ratio),
            sig(s.posterior)
        ));
    }
    out
}
