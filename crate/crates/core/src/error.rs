//! Crate-wide error type.

/// Errors produced by model validation, solution construction, and field
/// evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Geometry parameters violate their invariants (non-positive lengths,
    /// non-finite values, ...).
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A singularity position is outside the fluid domain or too close to a
    /// wall for the coefficient formulas to be well posed.
    #[error("invalid singularity: {0}")]
    InvalidSingularity(String),

    /// A non-finite number reached a public operation.
    #[error("non-finite input: {0}")]
    NonFinite(String),

    /// The truncated series could not reach the requested tolerance even at
    /// the maximum admitted truncation order.
    #[error(
        "accuracy not met: wall residual {achieved:.3e} exceeds {allowed:.3e} at N={n}"
    )]
    AccuracyNotMet {
        /// Measured wall residual of the best attempt.
        achieved: f64,
        /// Largest acceptable residual (10x the requested build tolerance).
        allowed: f64,
        /// Truncation order of the best attempt.
        n: usize,
    },

    /// Evaluation point is inside the exclusion disc of a singularity image.
    #[error("evaluation point within {radius:.1e} of a singularity image")]
    Proximity {
        /// Exclusion radius in canonical units.
        radius: f64,
    },

    /// Evaluation point lies outside the fluid domain.
    #[error("point outside the fluid domain: {0}")]
    OutsideDomain(String),

    /// A caller-side contract was violated (bad argument combination).
    #[error("contract violation: {0}")]
    Contract(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
