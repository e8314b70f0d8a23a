//! Subcommand implementations: `field`, `streamlines`, `coeffs`, `verify`,
//! and `compare`.

use clap::{Args, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

use crate::config::ProblemConfig;
use crate::output::{fmt_f64, open_sink, write_csv, write_json, Meta};
use crate::CliError;
use stokes_lattice_core::validation;
use stokes_lattice_core::{
    periodic_distance, sample_grid, trace_streamline, ChannelSolution64, GridSpec64, Scene64,
    Solution64, Termination, ValidationReport64,
};
use stokes_lattice_transform::{OracleParams, RayOracle};

/// Output table format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Comma-separated values with a fixed header.
    Csv,
    /// A `{meta, rows}` JSON document with the same values.
    Json,
}

fn parse_pair(text: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Config(format!(
            "{what} must be \"RE,IM\" or \"X,Y\" (got {text:?})"
        )));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|e| CliError::Config(format!("{what}: bad number {:?}: {e}", parts[0])))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|e| CliError::Config(format!("{what}: bad number {:?}: {e}", parts[1])))?;
    Ok((a, b))
}

// ---------------------------------------------------------------- field --

/// Arguments of the `field` subcommand.
#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Problem configuration file (JSON).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Number of x samples.
    #[arg(long, default_value_t = 64)]
    pub nx: usize,
    /// Number of y samples.
    #[arg(long, default_value_t = 32)]
    pub ny: usize,
    /// Left grid edge (physical; default 0).
    #[arg(long)]
    pub x0: Option<f64>,
    /// Right grid edge (physical; default one period).
    #[arg(long)]
    pub x1: Option<f64>,
    /// Bottom grid edge (physical; default 0, the wall).
    #[arg(long)]
    pub y0: Option<f64>,
    /// Top grid edge (physical; default the channel height, or half a
    /// period for the half-plane).
    #[arg(long)]
    pub y1: Option<f64>,
}

#[derive(Serialize)]
struct FieldRow {
    x: f64,
    y: f64,
    u: f64,
    v: f64,
    p_over_eta: f64,
    omega: f64,
    masked: bool,
}

#[derive(Serialize)]
struct FieldDoc {
    meta: Meta,
    rows: Vec<FieldRow>,
}

/// Samples the flow on a rectangular grid and writes the table.
pub fn run_field(args: &FieldArgs) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    let scene = cfg.build_scene(None)?;
    if args.nx == 0 || args.ny == 0 {
        return Err(CliError::Config("grid needs nx ≥ 1 and ny ≥ 1".into()));
    }
    let l = cfg.geometry.period_l;
    let y_top = cfg.geometry.height_h.unwrap_or(l / 2.0);
    let spec = GridSpec64 {
        x0: args.x0.unwrap_or(0.0),
        x1: args.x1.unwrap_or(l),
        nx: args.nx,
        y0: args.y0.unwrap_or(0.0),
        y1: args.y1.unwrap_or(y_top),
        ny: args.ny,
    };
    let rows = sample_grid(&scene, &spec)?;
    let meta = Meta::new(&cfg, &scene, cfg.tolerance);
    match args.format {
        Format::Csv => {
            let mut records: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
            records.push(
                ["x", "y", "u", "v", "p_over_eta", "omega", "masked"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            for r in &rows {
                records.push(vec![
                    fmt_f64(r.x),
                    fmt_f64(r.y),
                    fmt_f64(r.sample.u),
                    fmt_f64(r.sample.v),
                    fmt_f64(r.sample.p_over_eta),
                    fmt_f64(r.sample.omega),
                    r.masked.to_string(),
                ]);
            }
            write_csv(&args.out, records)
        }
        Format::Json => {
            let doc = FieldDoc {
                meta,
                rows: rows
                    .iter()
                    .map(|r| FieldRow {
                        x: r.x,
                        y: r.y,
                        u: r.sample.u,
                        v: r.sample.v,
                        p_over_eta: r.sample.p_over_eta,
                        omega: r.sample.omega,
                        masked: r.masked,
                    })
                    .collect(),
            };
            write_json(&args.out, &doc)
        }
    }
}

// ---------------------------------------------------------- streamlines --

/// Arguments of the `streamlines` subcommand.
#[derive(Debug, Args)]
pub struct StreamlinesArgs {
    /// Problem configuration file (JSON).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed points `"X,Y;X,Y;..."` (physical). An interior grid of seeds
    /// is generated when omitted.
    #[arg(long, value_name = "X,Y;...")]
    pub seeds: Option<String>,
    /// Integration step (canonical arc parameter).
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Step budget per streamline.
    #[arg(long, default_value_t = 5_000)]
    pub max_steps: usize,
}

#[derive(Serialize)]
struct StreamlineEntry {
    seed: [f64; 2],
    termination: String,
    points: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct StreamlinesDoc {
    meta: Meta,
    streamlines: Vec<StreamlineEntry>,
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::WallContact => "wall_contact",
        Termination::SingularityContact => "singularity_contact",
        Termination::StepBudget => "step_budget",
        Termination::ClosedOrbit => "closed_orbit",
    }
}

fn auto_seeds(cfg: &ProblemConfig) -> Vec<C64> {
    let l = cfg.geometry.period_l;
    let height = cfg.geometry.height_h.unwrap_or(l / 2.0);
    let mut seeds = Vec::new();
    for i in 0..6 {
        let x = l * (0.1 + 0.8 * i as f64 / 5.0);
        for j in 0..4 {
            let y = height * (0.15 + 0.7 * j as f64 / 3.0);
            seeds.push(C64::new(x, y));
        }
    }
    seeds
}

/// Traces streamlines from explicit or auto-generated seeds.
pub fn run_streamlines(args: &StreamlinesArgs) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    let scene = cfg.build_scene(None)?;
    let explicit = args.seeds.is_some();
    let seeds: Vec<C64> = match &args.seeds {
        Some(text) => text
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_pair(s, "--seeds entry").map(|(x, y)| C64::new(x, y)))
            .collect::<Result<_, _>>()?,
        None => auto_seeds(&cfg),
    };
    if seeds.is_empty() {
        return Err(CliError::Config("no seed points given".into()));
    }

    let mut entries = Vec::new();
    for &seed in &seeds {
        match trace_streamline(&scene, seed, args.step, args.max_steps) {
            Ok(tr) => {
                if tr.points.is_empty() && !explicit {
                    continue; // auto seed landed on a wall; nothing to trace
                }
                entries.push(StreamlineEntry {
                    seed: [seed.re, seed.im],
                    termination: termination_name(tr.termination).to_string(),
                    points: tr.points.iter().map(|&(x, y)| [x, y]).collect(),
                });
            }
            Err(e) if !explicit => {
                // Auto seeds silently skip excluded neighbourhoods.
                let _ = e;
                continue;
            }
            Err(e) => return Err(e.into()),
        }
    }

    let meta = Meta::new(&cfg, &scene, cfg.tolerance);
    match args.format {
        Format::Csv => {
            let mut records: Vec<Vec<String>> = Vec::new();
            records.push(
                ["seed", "vertex", "x", "y", "termination"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            for (si, e) in entries.iter().enumerate() {
                for (vi, p) in e.points.iter().enumerate() {
                    records.push(vec![
                        si.to_string(),
                        vi.to_string(),
                        fmt_f64(p[0]),
                        fmt_f64(p[1]),
                        e.termination.clone(),
                    ]);
                }
            }
            write_csv(&args.out, records)
        }
        Format::Json => write_json(
            &args.out,
            &StreamlinesDoc {
                meta,
                streamlines: entries,
            },
        ),
    }
}

// --------------------------------------------------------------- coeffs --

/// Arguments of the `coeffs` subcommand.
#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Problem configuration file (JSON; channel with one singularity).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Annulus probe point `ζ` as `"RE,IM"`; defaults to `1/e`.
    #[arg(long, value_name = "RE,IM")]
    pub zeta_probe: Option<String>,
    /// Number of harmonics to tabulate (≥ 1); defaults to the solution's
    /// own truncation.
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Serialize)]
struct CoeffRow {
    n: usize,
    f_term: f64,
    g_term: f64,
}

#[derive(Serialize)]
struct CoeffsDoc {
    meta: Meta,
    rows: Vec<CoeffRow>,
}

/// Tabulates the combined per-harmonic boundary terms at a probe point.
pub fn run_coeffs(args: &CoeffsArgs) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    if cfg.geometry.domain != "channel" {
        return Err(CliError::Config(
            "coeffs requires a channel configuration".into(),
        ));
    }
    if cfg.singularities.len() != 1 {
        return Err(CliError::Config(format!(
            "coeffs requires exactly one singularity (got {})",
            cfg.singularities.len()
        )));
    }
    if args.n_max == Some(0) {
        return Err(CliError::Config("n_max must be at least 1".into()));
    }
    let zeta = match &args.zeta_probe {
        Some(text) => {
            let (re, im) = parse_pair(text, "--zeta-probe")?;
            C64::new(re, im)
        }
        None => C64::new((-1.0f64).exp(), 0.0),
    };

    let scene = cfg.build_scene(None)?;
    let meta = Meta::new(&cfg, &scene, cfg.tolerance);
    let base = match &scene.solutions[0] {
        Solution64::Channel(cs) => cs,
        _ => unreachable!("channel config builds channel solutions"),
    };
    let rebuilt;
    let solution: &ChannelSolution64 = match args.n_max {
        Some(n) if n != base.n_terms => {
            rebuilt = ChannelSolution64::build_with_terms(
                base.spec.kind,
                base.spec.z0,
                &base.geom,
                cfg.tolerance,
                n,
            )?;
            &rebuilt
        }
        _ => base,
    };

    let mag = zeta.norm();
    if !(mag > solution.geom.rho && mag <= 1.0 + 1e-12) {
        return Err(CliError::Config(format!(
            "probe |ζ| = {mag:.6} outside the annulus ({:.6}, 1]",
            solution.geom.rho
        )));
    }

    let terms = validation::decay_terms(solution, zeta);
    let rows: Vec<CoeffRow> = terms
        .iter()
        .enumerate()
        .map(|(i, &(tf, tg))| CoeffRow {
            n: i + 1,
            f_term: tf,
            g_term: tg,
        })
        .collect();

    match args.format {
        Format::Csv => {
            let mut records: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
            records.push(
                ["n", "f_term", "g_term"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            for r in &rows {
                records.push(vec![r.n.to_string(), fmt_f64(r.f_term), fmt_f64(r.g_term)]);
            }
            write_csv(&args.out, records)
        }
        Format::Json => write_json(&args.out, &CoeffsDoc { meta, rows }),
    }
}

// --------------------------------------------------------------- verify --

/// Arguments of the `verify` subcommand.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Problem configuration file (JSON).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Emit a machine-readable JSON report instead of the text table.
    #[arg(long)]
    pub json: bool,
    /// Override the configuration's build tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Fault injection for self-testing: perturb the first series
    /// coefficient after the build so the battery must fail.
    #[arg(long, hide = true)]
    pub corrupt_coefficient: bool,
}

#[derive(Serialize)]
struct CheckRow {
    name: String,
    max_residual: f64,
    tolerance: f64,
    samples: usize,
    pass: bool,
}

impl From<&ValidationReport64> for CheckRow {
    fn from(r: &ValidationReport64) -> Self {
        Self {
            name: r.name.clone(),
            max_residual: r.max_residual,
            tolerance: r.tolerance,
            samples: r.samples,
            pass: r.pass,
        }
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    meta: Meta,
    checks: Vec<CheckRow>,
    pass: bool,
}

/// Runs the validation battery; exit 0 only when every check passes.
pub fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    let mut scene = cfg.build_scene(args.tol)?;
    if args.corrupt_coefficient {
        match scene.solutions.first_mut() {
            Some(Solution64::Channel(cs)) if !cs.coeffs.f_n.is_empty() => {
                cs.coeffs.f_n[0] *= 1.0 + 1e-3;
            }
            _ => {
                return Err(CliError::Config(
                    "--corrupt-coefficient needs a channel solution with at least one harmonic"
                        .into(),
                ))
            }
        }
    }
    let reports = validation::standard_battery(&scene);
    let pass = reports.iter().all(|r| r.pass);
    let meta = Meta::new(&cfg, &scene, args.tol.unwrap_or(cfg.tolerance));

    if args.json {
        let doc = VerifyDoc {
            meta,
            checks: reports.iter().map(CheckRow::from).collect(),
            pass,
        };
        write_json(&args.out, &doc)?;
    } else {
        let mut sink = open_sink(&args.out)?;
        let n_pass = reports.iter().filter(|r| r.pass).count();
        write!(
            sink,
            "{}verify: {n_pass}/{} checks passed\n",
            validation::render_reports(&reports),
            reports.len()
        )
        .and_then(|()| sink.flush())
        .map_err(|e| CliError::Io(format!("cannot write report: {e}")))?;
    }
    if pass {
        Ok(())
    } else {
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.name.as_str())
            .collect();
        Err(CliError::ChecksFailed(format!(
            "verification failed: {}",
            failed.join(", ")
        )))
    }
}

// -------------------------------------------------------------- compare --

/// Arguments of the `compare` subcommand.
#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Problem configuration file (JSON; channel with Stokeslet/stresslet
    /// singularities only).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Emit a machine-readable JSON report instead of the text table.
    #[arg(long)]
    pub json: bool,
    /// Acceptance threshold on the interior max-abs velocity difference.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Serialize)]
struct CompareDoc {
    meta: Meta,
    max_diff: f64,
    tolerance: f64,
    samples: usize,
    pass: bool,
}

/// Interior comparison band of the ray synthesis (canonical units): the
/// spectra carry `O(1/k)` corner tails, so wall/edge neighbourhoods are
/// excluded.
fn comparison_points(scene: &Scene64, h: f64) -> Vec<C64> {
    let l = std::f64::consts::TAU;
    let mut pts = Vec::new();
    for i in 0..20 {
        let x = 0.45 + (l - 0.9) * i as f64 / 19.0;
        for j in 0..10 {
            let y = 0.35 + (h - 0.7) * j as f64 / 9.0;
            let z = C64::new(x, y);
            if scene
                .solutions
                .iter()
                .all(|s| periodic_distance(z, s.spec().z0) >= 0.2)
            {
                pts.push(z);
            }
        }
    }
    pts
}

/// Compares the series field against the independent transform oracle.
pub fn run_compare(args: &CompareArgs) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    if cfg.geometry.domain != "channel" {
        return Err(CliError::Config(
            "compare requires a channel configuration (the transform oracle is channel-only)"
                .into(),
        ));
    }
    for (i, s) in cfg.singularities.iter().enumerate() {
        if s.kind != "stokeslet" && s.kind != "stresslet" {
            return Err(CliError::Config(format!(
                "singularity #{i}: the transform oracle supports stokeslet and stresslet \
                 only (got {})",
                s.kind
            )));
        }
    }
    let scene = cfg.build_scene(None)?;
    let h = scene
        .geometry
        .canonical_height()
        .expect("channel geometry has a height");
    if h <= 0.8 {
        return Err(CliError::Config(format!(
            "canonical height {h:.3} too small for the oracle's interior comparison \
             band (needs > 0.8)"
        )));
    }

    let mut oracles = Vec::with_capacity(scene.solutions.len());
    for s in &scene.solutions {
        let spec = s.spec();
        let oracle = RayOracle::new(&spec.kind, spec.z0, h, OracleParams::default())
            .map_err(|e| CliError::Config(format!("transform oracle: {e}")))?;
        oracles.push(oracle);
    }

    let pts = comparison_points(&scene, h);
    let report = validation::cross_method_compare(
        &scene,
        |z| oracles.iter().map(|o| o.velocity(z)).sum::<C64>(),
        &pts,
        args.tol,
    );
    let meta = Meta::new(&cfg, &scene, cfg.tolerance);

    if args.json {
        write_json(
            &args.out,
            &CompareDoc {
                meta,
                max_diff: report.max_residual,
                tolerance: report.tolerance,
                samples: report.samples,
                pass: report.pass,
            },
        )?;
    } else {
        let mut sink = open_sink(&args.out)?;
        write!(
            sink,
            "{}compare: max |w_series − w_transform| = {:.6e} over {} interior points \
             (tol {:.1e})\n",
            validation::render_reports(std::slice::from_ref(&report)),
            report.max_residual,
            report.samples,
            report.tolerance
        )
        .and_then(|()| sink.flush())
        .map_err(|e| CliError::Io(format!("cannot write report: {e}")))?;
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(format!(
            "cross-method difference {:.3e} exceeds {:.1e}",
            report.max_residual, report.tolerance
        )))
    }
}
