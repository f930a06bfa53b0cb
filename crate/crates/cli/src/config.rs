//! `--config` files: a JSON object per subcommand whose keys are the flag
//! names with underscores.  Explicit flags always override file values.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::path::PathBuf;

use crate::error::{CliError, CliResult};

pub fn load<T: DeserializeOwned + Default>(path: Option<&PathBuf>) -> CliResult<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))
}

/// Takes the flag when present, otherwise the config value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

/// Like [`pick`] but the parameter is mandatory.
pub fn need<T>(name: &str, flag: Option<T>, file: Option<T>) -> CliResult<T> {
    pick(flag, file)
        .ok_or_else(|| CliError::Validation(format!("missing required parameter `{name}`")))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PpvConfig {
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub prior: Option<f64>,
    pub n: Option<u32>,
    pub j: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkConfig {
    pub alpha_weak: Option<f64>,
    pub gamma_weak: Option<f64>,
    pub alpha_strong: Option<f64>,
    pub gamma_strong: Option<f64>,
    pub cw: Option<f64>,
    pub prior: Option<f64>,
    pub interest: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosteriorConfig {
    #[serde(flatten)]
    pub framework: FrameworkConfig,
    pub j: Option<u32>,
    pub k: Option<u32>,
    pub j_max: Option<u32>,
    pub k_max: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionConfig {
    #[serde(flatten)]
    pub framework: FrameworkConfig,
    pub beta_grid: Option<String>,
    pub kappa_grid: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    #[serde(flatten)]
    pub framework: FrameworkConfig,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub shift: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub max_count: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousConfig {
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub shift: Option<f64>,
    pub power_table: Option<PathBuf>,
    pub interest: Option<String>,
    pub prior: Option<f64>,
    pub effect: Option<f64>,
    pub sd: Option<f64>,
    pub n: Option<u32>,
    pub j_max: Option<u32>,
}
