//! Flag definitions.  Every numeric study parameter is optional at the clap
//! level so a `--config` file can supply it; the command layer enforces
//! which ones are actually required.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Posterior calculator for weak and strong study evidence seen through
/// publication bias.
///
/// Flag names mirror the conventional symbols: `--alpha-weak` is the weak
/// studies' false-positive rate α_w, `--gamma-weak` their power γ_w,
/// `--cw` the weak-attempt rate multiplier c_w, and `--interest` the prior
/// on the latent interest level (gamma:<shape>,<rate> or uniform:<upper>).
#[derive(Debug, Parser)]
#[command(name = "evidence", version, max_term_width = 100)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical positive predictive values for one study design.
    Ppv(PpvArgs),
    /// Posteriors and likelihood ratios in the interest-level framework.
    Posterior(PosteriorArgs),
    /// Sweep the gamma-prior rate (and optionally shape) and map the
    /// paradox region.
    Region(RegionArgs),
    /// Compare the closed forms against the Monte Carlo and quadrature
    /// oracles.
    Simulate(SimulateArgs),
    /// The homogeneous model: one study type, evidence strength carried by
    /// the achieved p-value.
    Homogeneous(HomogeneousArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = false)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file supplying any of this subcommand's parameters
    /// (same names as the flags, underscores for dashes); explicit flags
    /// override file values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PpvArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// False-positive rate α of the design.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Power γ of the design.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Prior probability that the hypothesis is true.
    #[arg(long)]
    pub prior: Option<f64>,
    /// Number of studies attempted (enables the at-least-one report).
    #[arg(long)]
    pub n: Option<u32>,
    /// Exact number of successes among the n studies.
    #[arg(long, requires = "n")]
    pub j: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FrameworkArgs {
    /// False-positive rate α_w of weak studies.
    #[arg(long)]
    pub alpha_weak: Option<f64>,
    /// Power γ_w of weak studies.
    #[arg(long)]
    pub gamma_weak: Option<f64>,
    /// False-positive rate α_s of strong studies.
    #[arg(long)]
    pub alpha_strong: Option<f64>,
    /// Power γ_s of strong studies.
    #[arg(long)]
    pub gamma_strong: Option<f64>,
    /// Weak-attempt rate multiplier c_w.
    #[arg(long)]
    pub cw: Option<f64>,
    /// Prior probability that the hypothesis is true.
    #[arg(long)]
    pub prior: Option<f64>,
    /// Interest prior: gamma:<shape>,<rate> or uniform:<upper>.
    #[arg(long)]
    pub interest: Option<String>,
}

#[derive(Debug, Args)]
pub struct PosteriorArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub framework: FrameworkArgs,
    /// Weak-success count j for a single cell.
    #[arg(long)]
    pub j: Option<u32>,
    /// Strong-success count k for a single cell.
    #[arg(long)]
    pub k: Option<u32>,
    /// Emit a table for j = 0..=j-max.
    #[arg(long)]
    pub j_max: Option<u32>,
    /// Emit a table for k = 0..=k-max.
    #[arg(long)]
    pub k_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub framework: FrameworkArgs,
    /// Rate sweep lo,hi,points (inclusive, linearly spaced).
    #[arg(long)]
    pub beta_grid: Option<String>,
    /// Optional shape sweep lo,hi,points.
    #[arg(long)]
    pub kappa_grid: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Montecarlo,
    Quadrature,
    Both,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub framework: FrameworkArgs,
    /// Publication cutoff α (homogeneous model).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Weak p-value floor (homogeneous model).
    #[arg(long)]
    pub p: Option<f64>,
    /// Standardized shift of the normal power curve (homogeneous model).
    #[arg(long)]
    pub shift: Option<f64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    pub samples: Option<u64>,
    /// RNG seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Which oracle(s) to run.
    #[arg(long, value_enum, default_value_t = Oracle::Both)]
    pub oracle: Oracle,
    /// Largest per-margin count tracked exactly by the tally table.
    #[arg(long)]
    pub max_count: Option<u32>,
}

#[derive(Debug, Args)]
pub struct HomogeneousArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Publication cutoff α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Weak p-value floor; the report conditions on successes with ρ ≥ p.
    #[arg(long)]
    pub p: Option<f64>,
    /// Standardized shift of the normal power curve.
    #[arg(long, conflicts_with_all = ["effect", "sd", "n"])]
    pub shift: Option<f64>,
    /// CSV file (x,gamma_x with header) tabulating the power curve.
    #[arg(long, conflicts_with = "shift")]
    pub power_table: Option<PathBuf>,
    /// Interest prior, gamma:<shape>,<rate>.
    #[arg(long)]
    pub interest: Option<String>,
    /// Prior probability that the hypothesis is true.
    #[arg(long)]
    pub prior: Option<f64>,
    /// Effect size, for deriving the shift as effect·√n/sd.
    #[arg(long, requires_all = ["sd", "n"])]
    pub effect: Option<f64>,
    /// Standard deviation of the paired differences.
    #[arg(long)]
    pub sd: Option<f64>,
    /// Sample size of the design.
    #[arg(long)]
    pub n: Option<u32>,
    /// Highest success count in the posterior table.
    #[arg(long)]
    pub j_max: Option<u32>,
}
