//! Report metadata and output plumbing shared by the subcommands.
//!
//! All numbers are written in the shortest representation that parses back
//! to the identical `f64` (Rust's default float formatting), so the CSV and
//! JSON variants of the same run carry bit-identical values.

use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use crate::config::{GeometryConfig, ProblemConfig};
use crate::CliError;
use stokes_lattice_core::Scene64;

/// Metadata block attached to every structured output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    /// Geometry as configured (physical frame).
    pub geometry: GeometryConfig,
    /// Singularity kind names, declaration order.
    pub kinds: Vec<String>,
    /// Requested build tolerance.
    pub tolerance: f64,
    /// Largest verified build residual across the scene's solutions.
    pub achieved: f64,
    /// Tool version.
    pub version: String,
}

impl Meta {
    /// Assembles the metadata for a built scene.
    pub fn new(config: &ProblemConfig, scene: &Scene64, tolerance: f64) -> Self {
        Self {
            geometry: config.geometry.clone(),
            kinds: config.kind_names(),
            tolerance,
            achieved: scene.achieved_residual(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Opens the output sink: a file when `--out` is given, stdout otherwise.
pub fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match out {
        None => Ok(Box::new(std::io::stdout().lock())),
        Some(path) => {
            let f = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
    }
}

/// Serializes a JSON document to the sink.
pub fn write_json<T: Serialize>(out: &Option<PathBuf>, doc: &T) -> Result<(), CliError> {
    let mut sink = open_sink(out)?;
    serde_json::to_writer_pretty(&mut sink, doc)
        .map_err(|e| CliError::Io(format!("cannot serialize output: {e}")))?;
    sink.write_all(b"\n")
        .and_then(|()| sink.flush())
        .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

/// Writes CSV records (first record is the header) to the sink.
pub fn write_csv<I, R>(out: &Option<PathBuf>, records: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let sink = open_sink(out)?;
    let mut w = csv::Writer::from_writer(sink);
    for rec in records {
        w.write_record(rec.into_iter().map(|s| s.into_bytes()))
            .map_err(|e| CliError::Io(format!("cannot write CSV: {e}")))?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("cannot flush CSV: {e}")))
}

/// Shortest round-trip representation of a float (locale-independent).
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}
