//! Error type shared by every module in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when constructing parameters or
/// evaluating one of the closed forms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violated a construction invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The strength ordering gamma_s/alpha_s > gamma_w/alpha_w > 1 failed.
    #[error("strength ordering violated: require gamma_s/alpha_s > gamma_w/alpha_w > 1, got {0}")]
    StrengthOrdering(String),

    /// Priors of exactly 0 or 1 are rejected: the posterior is defined but
    /// carries no information, so they almost always indicate a typo.
    #[error("degenerate hypothesis prior {0}: posterior would be constant")]
    DegeneratePrior(f64),

    /// An operation that only exists for one interest-prior family was
    /// called with the other.
    #[error("operation requires a {expected} interest prior")]
    WrongPrior {
        /// The prior family the operation is defined for.
        expected: &'static str,
    },

    /// Adaptive quadrature hit its depth limit before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: achieved relative error {achieved:.3e}, target {target:.3e}")]
    QuadratureFailure {
        /// Relative error estimate actually attained.
        achieved: f64,
        /// Relative error that was requested.
        target: f64,
    },

    /// A tabulated curve failed validation or parsing.
    #[error("invalid curve table: {0}")]
    InvalidTable(String),
}
