//! Closed-form solutions for singly periodic rows of two-dimensional
//! Stokes-flow point singularities in a no-slip channel and in the
//! half-plane above a no-slip wall.
//!
//! The flow is represented through a Goursat pair of analytic functions
//! `(f, g)` with stream function `ψ = Im[z̄ f(z) + g(z)]`, transplanted by
//! the conformal map `ζ = e^{iz}` onto an annulus (channel) or punctured
//! disc (half-plane). The channel solver determines the Laurent
//! coefficients of the regular parts in closed form from per-kind wall
//! forcing data; the half-plane solver is fully closed-form. On top sit
//! field evaluation (velocity, pressure, vorticity), physical diagnostics
//! (force and mass-flux contours), grid sampling, streamline tracing, and a
//! validation battery.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait (`f64`, `f32`, …); the crate root exports `f64`-concrete
//! aliases for the common case.

#![deny(missing_docs)]

pub mod channel_series;
pub mod error;
pub mod flow;
pub mod halfplane;
pub mod model;
pub mod scalar;
pub mod validation;

pub use channel_series::{ChannelSolution, GoursatParts, SeriesCoefficients};
pub use error::{Error, Result};
pub use flow::{
    parametric_derivative_build, sample_grid, trace_streamline, DerivativePair, DomainGeometry,
    GridRow, GridSpec, ParametricField, Scene, Solution, Streamline, Termination,
};
pub use halfplane::HalfPlaneSolution;
pub use model::{
    canonicalize, canonicalize_halfplane, cexpm1, local_velocity, periodic_distance,
    reduced_offset, z_of_zeta, zeta_diff, zeta_of_z, ChannelGeometry, FlowSample,
    HalfPlaneGeometry, SingularityKind, SingularitySpec, StrengthConversion,
};
pub use scalar::{Real, C};
pub use validation::ValidationReport;

/// `f64` complex number.
pub type C64 = num_complex::Complex64;
/// `f64` channel solution.
pub type ChannelSolution64 = ChannelSolution<f64>;
/// `f64` half-plane solution.
pub type HalfPlaneSolution64 = HalfPlaneSolution<f64>;
/// `f64` scene.
pub type Scene64 = Scene<f64>;
/// `f64` solution wrapper.
pub type Solution64 = Solution<f64>;
/// `f64` singularity kind.
pub type SingularityKind64 = SingularityKind<f64>;
/// `f64` channel geometry.
pub type ChannelGeometry64 = ChannelGeometry<f64>;
/// `f64` half-plane geometry.
pub type HalfPlaneGeometry64 = HalfPlaneGeometry<f64>;
/// `f64` flow sample.
pub type FlowSample64 = FlowSample<f64>;
/// `f64` validation report.
pub type ValidationReport64 = ValidationReport<f64>;
/// `f64` singularity spec.
pub type SingularitySpec64 = SingularitySpec<f64>;
/// `f64` grid spec.
pub type GridSpec64 = GridSpec<f64>;
