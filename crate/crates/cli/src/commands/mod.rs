//! Subcommand implementations.  Each returns the process exit code on
//! success (0, or 3 when an oracle comparison fails).

pub mod homogeneous;
pub mod posterior;
pub mod ppv;
pub mod region;
pub mod simulate;

use evidence_core::{ErrorRates, FrameworkParams};

use crate::args::FrameworkArgs;
use crate::config::{need, FrameworkConfig};
use crate::error::CliResult;
use crate::output::parse_interest;

/// Echo of the resolved framework parameters, for report headers.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FrameworkEcho {
    pub alpha_weak: f64,
    pub gamma_weak: f64,
    pub alpha_strong: f64,
    pub gamma_strong: f64,
    pub cw: f64,
    pub prior: f64,
    pub interest: String,
}

pub fn resolve_framework(
    args: &FrameworkArgs,
    file: &FrameworkConfig,
) -> CliResult<(FrameworkParams, FrameworkEcho)> {
    let alpha_weak = need("alpha-weak", args.alpha_weak, file.alpha_weak)?;
    let gamma_weak = need("gamma-weak", args.gamma_weak, file.gamma_weak)?;
    let alpha_strong = need("alpha-strong", args.alpha_strong, file.alpha_strong)?;
    let gamma_strong = need("gamma-strong", args.gamma_strong, file.gamma_strong)?;
    let cw = need("cw", args.cw, file.cw)?;
    let prior = need("prior", args.prior, file.prior)?;
    let interest_spec = need(
        "interest",
        args.interest.clone(),
        file.interest.clone(),
    )?;
    let interest = parse_interest(&interest_spec)?;
    let weak = ErrorRates::new(alpha_weak, gamma_weak)?;
    let strong = ErrorRates::new(alpha_strong, gamma_strong)?;
    let params = FrameworkParams::new(weak, strong, cw, prior, interest)?;
    let echo = FrameworkEcho {
        alpha_weak,
        gamma_weak,
        alpha_strong,
        gamma_strong,
        cw,
        prior,
        interest: interest_spec,
    };
    Ok((params, echo))
}
