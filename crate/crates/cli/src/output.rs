//! Report emission: JSON at full double precision, CSV at 10 significant
//! digits, to a file or standard output.  Identical invocations produce
//! byte-identical reports.

use serde::Serialize;

use crate::args::{CommonArgs, Format};
use crate::error::{CliError, CliResult};

/// 10-significant-digit rendering for CSV cells.
pub fn sig(x: f64) -> String {
    format!("{:.9e}", x)
}

/// Optional numeric cell; empty when absent.
pub fn sig_opt(x: Option<f64>) -> String {
    x.map(sig).unwrap_or_default()
}

pub fn emit(common: &CommonArgs, text: String) -> CliResult<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn render<T: Serialize>(common: &CommonArgs, report: &T, to_csv: impl Fn() -> String) -> CliResult<()> {
    let text = match common.format {
        Format::Json => {
            let mut json = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Validation(format!("serialization failed: {e}")))?;
            json.push('\n');
            json
        }
        Format::Csv => to_csv(),
    };
    emit(common, text)
}

/// Parses a `lo,hi,points` sweep specification into an inclusive linear grid.
pub fn parse_grid(name: &str, spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!(
            "`--{name}` expects lo,hi,points, got `{spec}`"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("`--{name}`: bad lower bound `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("`--{name}`: bad upper bound `{}`", parts[1])))?;
    let points: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("`--{name}`: bad point count `{}`", parts[2])))?;
    if points == 0 {
        return Err(CliError::Validation(format!("`--{name}`: empty grid")));
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(CliError::Validation(format!(
            "`--{name}`: bounds must be finite with hi >= lo"
        )));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| lo + step * i as f64).collect())
}

/// Parses `gamma:<shape>,<rate>` or `uniform:<upper>`.
pub fn parse_interest(spec: &str) -> CliResult<evidence_core::InterestPrior> {
    let bad = || {
        CliError::Validation(format!(
            "`--interest` expects gamma:<shape>,<rate> or uniform:<upper>, got `{spec}`"
        ))
    };
    let (family, params) = spec.split_once(':').ok_or_else(bad)?;
    match family.trim() {
        "gamma" => {
            let (shape, rate) = params.split_once(',').ok_or_else(bad)?;
            let shape: f64 = shape.trim().parse().map_err(|_| bad())?;
            let rate: f64 = rate.trim().parse().map_err(|_| bad())?;
            Ok(evidence_core::InterestPrior::gamma(shape, rate)?)
        }
        "uniform" => {
            let upper: f64 = params.trim().parse().map_err(|_| bad())?;
            Ok(evidence_core::InterestPrior::uniform(upper)?)
        }
        _ => Err(bad()),
    }
}
