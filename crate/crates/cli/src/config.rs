//! Declarative problem configuration: a single JSON document describing the
//! geometry, the singularities (physical coordinates), viscosity, and the
//! build tolerance.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::Path;
use stokes_lattice_core::{Scene64, SingularityKind64};

use crate::CliError;

fn default_eta() -> f64 {
    1.0
}

fn default_tolerance() -> f64 {
    1e-12
}

/// Domain block of the configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    /// `"channel"` or `"halfplane"`.
    pub domain: String,
    /// Physical period of the singularity array.
    pub period_l: f64,
    /// Physical channel height (channel only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_h: Option<f64>,
}

/// One singularity entry (physical frame).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityConfig {
    /// Kind name: `stokeslet`, `stresslet`, `force_quadrupole`,
    /// `source_dipole`, or `source_quadrupole`.
    pub kind: String,
    /// Complex strength as `[re, im]`.
    pub mu: [f64; 2],
    /// Position as `[x, y]`.
    pub z0: [f64; 2],
}

/// Root configuration document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Domain geometry.
    pub geometry: GeometryConfig,
    /// Singularity list; empty means the zero field.
    #[serde(default)]
    pub singularities: Vec<SingularityConfig>,
    /// Viscosity (enters force reporting only).
    #[serde(default = "default_eta")]
    pub eta: f64,
    /// Build tolerance for the series solutions.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl ProblemConfig {
    /// Reads and parses a configuration file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ProblemConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        match self.geometry.domain.as_str() {
            "channel" => {
                if self.geometry.height_h.is_none() {
                    return Err(CliError::Config(
                        "channel geometry requires height_h".into(),
                    ));
                }
            }
            "halfplane" => {
                if self.geometry.height_h.is_some() {
                    return Err(CliError::Config(
                        "halfplane geometry takes no height_h".into(),
                    ));
                }
            }
            other => {
                return Err(CliError::Config(format!(
                    "unknown domain {other:?} (expected \"channel\" or \"halfplane\")"
                )));
            }
        }
        Ok(())
    }

    /// Kind/position pairs, with kind names resolved.
    pub fn kind_pairs(&self) -> Result<Vec<(SingularityKind64, C64)>, CliError> {
        self.singularities
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let kind = SingularityKind64::from_name(&s.kind, C64::new(s.mu[0], s.mu[1]))
                    .map_err(|e| CliError::Config(format!("singularity #{i}: {e}")))?;
                Ok((kind, C64::new(s.z0[0], s.z0[1])))
            })
            .collect()
    }

    /// Builds the evaluation scene, with `tolerance` optionally overridden.
    pub fn build_scene(&self, tol_override: Option<f64>) -> Result<Scene64, CliError> {
        let pairs = self.kind_pairs()?;
        let tol = tol_override.unwrap_or(self.tolerance);
        let scene = match self.geometry.domain.as_str() {
            "channel" => {
                let h = self.geometry.height_h.expect("validated");
                Scene64::channel(self.geometry.period_l, h, &pairs, self.eta, tol)
            }
            _ => Scene64::halfplane(self.geometry.period_l, &pairs, self.eta),
        }
        .map_err(CliError::from)?
        .0;
        Ok(scene)
    }

    /// Kind names in declaration order (for report metadata).
    pub fn kind_names(&self) -> Vec<String> {
        self.singularities.iter().map(|s| s.kind.clone()).collect()
    }
}
