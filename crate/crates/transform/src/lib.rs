//! Independent quasi-analytical solver for the periodic singularity row in
//! a no-slip channel, built on the unified transform method: boundary
//! spectral functions, global relations, Papkovich–Fadle collocation, and a
//! four-ray inverse-transform synthesis.
//!
//! This crate exists to cross-validate the series solver in
//! `stokes-lattice-core` by a genuinely different route; it is `f64`-only
//! and favours clarity over speed.

#![deny(missing_docs)]

pub mod aff;
pub mod cheb;
pub mod dd;
pub mod oracle;
pub mod quad;
pub mod roots;
pub mod system;

pub use oracle::{OracleParams, RayOracle};
pub use roots::{pf_roots, pf_roots_dd, root_residual};
pub use system::{SolveDiagnostics, TransformError, TransformSystem};
