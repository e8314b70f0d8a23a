//! Branch-safe field evaluation over one or more solutions: velocity,
//! pressure, vorticity, contour diagnostics (force, mass flux), grid
//! sampling, streamline tracing, and parametric-derivative fields.
//!
//! Everything here works in the canonical 2π-period frame internally; grid
//! sampling and streamline tracing accept and report physical coordinates,
//! converting at the boundary (velocities are frame-invariant, `p/η` and `ω`
//! pick up one factor of the rescaling `c`).

use crate::channel_series::{ChannelSolution, GoursatParts};
use crate::error::{Error, Result};
use crate::halfplane::HalfPlaneSolution;
use crate::model::{
    canonicalize, canonicalize_halfplane, periodic_distance, ChannelGeometry, FlowSample,
    HalfPlaneGeometry, SingularityKind, SingularitySpec, StrengthConversion,
};
use crate::scalar::{as_f64, r, Real, C};
use num_traits::Zero;
use rayon::prelude::*;

/// Default exclusion radius around each singularity image (canonical units).
pub const DEFAULT_EXCLUSION: f64 = 1e-8;

/// Wall-approach cutoff for streamline tracing (canonical units).
pub const WALL_MARGIN: f64 = 1e-6;

/// One solved singularity problem, channel or half-plane.
#[derive(Debug, Clone)]
pub enum Solution<T: Real> {
    /// Series solution between two walls.
    Channel(ChannelSolution<T>),
    /// Closed-form solution above a single wall.
    HalfPlane(HalfPlaneSolution<T>),
}

impl<T: Real> Solution<T> {
    /// The underlying singularity (canonical coordinates).
    pub fn spec(&self) -> &SingularitySpec<T> {
        match self {
            Solution::Channel(s) => &s.spec,
            Solution::HalfPlane(s) => &s.spec,
        }
    }

    /// Complex velocity `u − iv` at canonical `z` (unguarded; diverges at
    /// the singularity images).
    pub fn velocity(&self, z: C<T>) -> C<T> {
        match self {
            Solution::Channel(s) => s.velocity(z),
            Solution::HalfPlane(s) => s.velocity(z),
        }
    }

    /// `p/η − iω = 4 f′(z)` at canonical `z`.
    pub fn four_f_prime(&self, z: C<T>) -> C<T> {
        match self {
            Solution::Channel(s) => s.four_f_prime(z),
            Solution::HalfPlane(s) => s.four_f_prime(z),
        }
    }

    /// Goursat data at canonical `z`.
    pub fn goursat(&self, z: C<T>) -> GoursatParts<T> {
        match self {
            Solution::Channel(s) => s.goursat(z),
            Solution::HalfPlane(s) => s.goursat(z),
        }
    }

    /// `(m_f, m_g, a)`: log strengths at `ζ₀` and the `a log ζ` mode
    /// (half-plane: `a = 0`). These are the only multivalued ingredients,
    /// which is all the force contour needs.
    pub fn log_strengths(&self) -> (C<T>, C<T>, T) {
        match self {
            Solution::Channel(s) => (s.parts.m_f, s.parts.m_g, s.coeffs.a),
            Solution::HalfPlane(s) => (s.m_f, s.m_g, T::zero()),
        }
    }

    /// Achieved build residual (half-plane forms are exact: reports 0).
    pub fn residual(&self) -> T {
        match self {
            Solution::Channel(s) => s.residual,
            Solution::HalfPlane(_) => T::zero(),
        }
    }
}

/// Which domain a scene lives in, with its geometry record.
#[derive(Debug, Clone, Copy)]
pub enum DomainGeometry<T: Real> {
    /// Two-walled channel.
    Channel(ChannelGeometry<T>),
    /// Single wall below the fluid.
    HalfPlane(HalfPlaneGeometry<T>),
}

impl<T: Real> DomainGeometry<T> {
    /// Physical-to-canonical rescaling factor `c = 2π/period`.
    pub fn scale_c(&self) -> T {
        match self {
            DomainGeometry::Channel(g) => g.scale_c,
            DomainGeometry::HalfPlane(g) => g.scale_c,
        }
    }

    /// Canonical channel height, if bounded above.
    pub fn canonical_height(&self) -> Option<T> {
        match self {
            DomainGeometry::Channel(g) => Some(g.canonical_h),
            DomainGeometry::HalfPlane(_) => None,
        }
    }

    /// True iff canonical `z` lies in the closed fluid domain (walls
    /// included).
    pub fn contains_canonical(&self, z: C<T>) -> bool {
        match self {
            DomainGeometry::Channel(g) => z.im >= T::zero() && z.im <= g.canonical_h,
            DomainGeometry::HalfPlane(_) => z.im >= T::zero(),
        }
    }
}

/// A set of solutions sharing one geometry, evaluated by superposition.
#[derive(Debug, Clone)]
pub struct Scene<T: Real> {
    /// Shared geometry.
    pub geometry: DomainGeometry<T>,
    /// Superposed solutions (may be empty: the zero field).
    pub solutions: Vec<Solution<T>>,
    /// Viscosity; enters force reporting only.
    pub eta: T,
    /// Exclusion radius around singularity images (canonical units).
    pub exclusion_radius: T,
}

impl<T: Real> Scene<T> {
    /// Assembles a scene, checking that every solution matches the
    /// geometry.
    pub fn new(geometry: DomainGeometry<T>, solutions: Vec<Solution<T>>, eta: T) -> Result<Self> {
        if !(eta.is_finite() && eta > T::zero()) {
            return Err(Error::Contract(format!(
                "viscosity must be positive and finite (got {eta})"
            )));
        }
        let tol = r::<T>(1e-12);
        for (i, s) in solutions.iter().enumerate() {
            match (&geometry, s) {
                (DomainGeometry::Channel(g), Solution::Channel(cs)) => {
                    if (cs.geom.canonical_h - g.canonical_h).abs() > tol {
                        return Err(Error::Contract(format!(
                            "solution #{i} was built for canonical height {} but the \
                             scene has {}",
                            cs.geom.canonical_h, g.canonical_h
                        )));
                    }
                }
                (DomainGeometry::HalfPlane(_), Solution::HalfPlane(_)) => {}
                _ => {
                    return Err(Error::Contract(format!(
                        "solution #{i} does not match the scene domain"
                    )));
                }
            }
        }
        Ok(Self {
            geometry,
            solutions,
            eta,
            exclusion_radius: r(DEFAULT_EXCLUSION),
        })
    }

    /// Builds a channel scene from physical-frame inputs, returning the
    /// strength-conversion report alongside.
    pub fn channel(
        period_l: T,
        height_h: T,
        singularities: &[(SingularityKind<T>, C<T>)],
        eta: T,
        tolerance: T,
    ) -> Result<(Self, Vec<StrengthConversion<T>>)> {
        let (geom, specs, report) = canonicalize(period_l, height_h, singularities)?;
        let mut solutions = Vec::with_capacity(specs.len());
        for spec in &specs {
            solutions.push(Solution::Channel(ChannelSolution::build(
                spec.kind, spec.z0, &geom, tolerance,
            )?));
        }
        Ok((
            Self::new(DomainGeometry::Channel(geom), solutions, eta)?,
            report,
        ))
    }

    /// Builds a half-plane scene from physical-frame inputs.
    pub fn halfplane(
        period_l: T,
        singularities: &[(SingularityKind<T>, C<T>)],
        eta: T,
    ) -> Result<(Self, Vec<StrengthConversion<T>>)> {
        let (geom, specs, report) = canonicalize_halfplane(period_l, singularities)?;
        let mut solutions = Vec::with_capacity(specs.len());
        for spec in &specs {
            solutions.push(Solution::HalfPlane(HalfPlaneSolution::build(
                spec.kind, spec.z0,
            )?));
        }
        Ok((
            Self::new(DomainGeometry::HalfPlane(geom), solutions, eta)?,
            report,
        ))
    }

    /// Largest achieved build residual over the scene's solutions.
    pub fn achieved_residual(&self) -> T {
        self.solutions
            .iter()
            .map(|s| s.residual())
            .fold(T::zero(), T::max)
    }

    /// Converts a physical point to canonical coordinates.
    #[inline]
    pub fn to_canonical(&self, z_phys: C<T>) -> C<T> {
        z_phys * self.geometry.scale_c()
    }

    /// Converts a canonical point to physical coordinates.
    #[inline]
    pub fn to_physical(&self, z_canon: C<T>) -> C<T> {
        z_canon / self.geometry.scale_c()
    }

    /// Domain and proximity guard for a canonical point.
    pub fn check_point(&self, z: C<T>) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("evaluation point".into()));
        }
        if !self.geometry.contains_canonical(z) {
            return Err(Error::OutsideDomain(format!(
                "point {} lies outside the fluid domain",
                crate::model::fmt_c(z)
            )));
        }
        for s in &self.solutions {
            if periodic_distance(z, s.spec().z0) < self.exclusion_radius {
                return Err(Error::Proximity {
                    radius: as_f64(self.exclusion_radius),
                });
            }
        }
        Ok(())
    }

    /// Superposed `u − iv` at canonical `z`, guarded.
    pub fn velocity(&self, z: C<T>) -> Result<C<T>> {
        self.check_point(z)?;
        Ok(self.velocity_unchecked(z))
    }

    /// Superposed `u − iv` at canonical `z`, no guards.
    pub fn velocity_unchecked(&self, z: C<T>) -> C<T> {
        let mut w = C::<T>::zero();
        for s in &self.solutions {
            w = w + s.velocity(z);
        }
        w
    }

    /// Superposed `4f′ = p/η − iω` at canonical `z`, no guards.
    pub fn four_f_prime_unchecked(&self, z: C<T>) -> C<T> {
        let mut s4 = C::<T>::zero();
        for s in &self.solutions {
            s4 = s4 + s.four_f_prime(z);
        }
        s4
    }

    /// Full flow sample at canonical `z`, guarded; all components finite.
    pub fn sample(&self, z: C<T>) -> Result<FlowSample<T>> {
        self.check_point(z)?;
        let w = self.velocity_unchecked(z);
        let q = self.four_f_prime_unchecked(z);
        let out = FlowSample {
            u: w.re,
            v: -w.im,
            p_over_eta: q.re,
            omega: -q.im,
        };
        if !out.is_finite() {
            return Err(Error::NonFinite(format!(
                "flow sample at {}",
                crate::model::fmt_c(z)
            )));
        }
        Ok(out)
    }

    /// Flow sample at a physical point; `p/η` and `ω` are converted to the
    /// physical frame (one factor of `c`).
    pub fn sample_physical(&self, z_phys: C<T>) -> Result<FlowSample<T>> {
        let c = self.geometry.scale_c();
        let s = self.sample(z_phys * c)?;
        Ok(FlowSample {
            u: s.u,
            v: s.v,
            p_over_eta: s.p_over_eta * c,
            omega: s.omega * c,
        })
    }

    /// Force on the fluid inside a circle and mass flux through it.
    ///
    /// `center`/`radius` are canonical. The force is the change of `2iηH`,
    /// `H = f + z·conj(f′) + conj(g′)`, around the circle: single-valued
    /// pieces telescope exactly, and the log terms contribute through the
    /// continuously tracked winding of `arg(ζ−ζ₀)` and `arg ζ` — no
    /// principal-branch logarithm is ever taken. The flux is
    /// `Im ∮ (u−iv) dz` by the midpoint rule (spectrally accurate here).
    pub fn contour_diagnostics(
        &self,
        center: C<T>,
        radius: T,
        m_samples: usize,
    ) -> Result<(C<T>, T)> {
        if m_samples < 64 {
            return Err(Error::Contract(format!(
                "contour needs at least 64 samples (got {m_samples})"
            )));
        }
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(Error::InvalidGeometry(format!(
                "contour radius must be positive (got {radius})"
            )));
        }
        // The circle must stay strictly inside the fluid...
        let below = center.im - radius;
        let ok_above = match self.geometry {
            DomainGeometry::Channel(g) => center.im + radius < g.canonical_h,
            DomainGeometry::HalfPlane(_) => true,
        };
        if below <= T::zero() || !ok_above {
            return Err(Error::InvalidGeometry(
                "contour touches or crosses a wall".into(),
            ));
        }
        // ...and must not pass through a singularity image.
        let margin = r::<T>(1e-8);
        for s in &self.solutions {
            let d = periodic_distance(center, s.spec().z0);
            if (d - radius).abs() < margin {
                return Err(Error::InvalidGeometry(
                    "contour passes through a singularity image".into(),
                ));
            }
        }

        let two_pi = T::PI() + T::PI();
        let mf = r::<T>(m_samples as f64);
        let mut pts = Vec::with_capacity(m_samples + 1);
        for j in 0..=m_samples {
            let th = two_pi * r::<T>(j as f64) / mf;
            pts.push(center + C::new(th.cos(), th.sin()) * radius);
        }

        // Mass flux: midpoint rule on w dz.
        let w_vals: Vec<C<T>> = pts.iter().map(|&z| self.velocity_unchecked(z)).collect();
        let mut flux_acc = C::<T>::zero();
        for j in 0..m_samples {
            let mid = (w_vals[j] + w_vals[j + 1]) * r::<T>(0.5);
            flux_acc = flux_acc + mid * (pts[j + 1] - pts[j]);
        }
        let flux = flux_acc.im;

        // Force: per-solution winding of the log terms.
        let zetas: Vec<C<T>> = pts.iter().map(|&z| crate::model::zeta_of_z(z)).collect();
        let mut darg0 = T::zero();
        for j in 0..m_samples {
            darg0 = darg0 + (zetas[j + 1] / zetas[j]).arg();
        }
        let jj = crate::scalar::i::<T>();
        let mut d_h = C::<T>::zero();
        for s in &self.solutions {
            let zeta0 = s.spec().zeta0;
            let mut darg1 = T::zero();
            for j in 0..m_samples {
                darg1 = darg1 + ((zetas[j + 1] - zeta0) / (zetas[j] - zeta0)).arg();
            }
            let (m_f, m_g, a) = s.log_strengths();
            d_h = d_h + m_f * (jj * darg1) + (m_g * (jj * darg1)).conj();
            d_h = d_h + jj * (a * darg0) + (-(jj * (a * darg0))).conj();
        }
        let force = jj * (self.eta + self.eta) * d_h;

        if !(force.re.is_finite() && force.im.is_finite() && flux.is_finite()) {
            return Err(Error::NonFinite("contour diagnostics".into()));
        }
        Ok((force, flux))
    }
}

/// Rectangular sampling grid in physical coordinates, inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T: Real> {
    /// Left edge.
    pub x0: T,
    /// Right edge.
    pub x1: T,
    /// Number of x samples (≥ 1).
    pub nx: usize,
    /// Bottom edge.
    pub y0: T,
    /// Top edge.
    pub y1: T,
    /// Number of y samples (≥ 1).
    pub ny: usize,
}

/// One sampled grid node (physical coordinates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow<T: Real> {
    /// Physical x.
    pub x: T,
    /// Physical y.
    pub y: T,
    /// Field sample (zeros when masked).
    pub sample: FlowSample<T>,
    /// True when the node is within the exclusion radius of a singularity
    /// image; the sample is then zeroed, never NaN.
    pub masked: bool,
}

/// Inclusive linear spacing; `n = 1` collapses to `a`.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / r::<T>((n - 1) as f64);
    (0..n)
        .map(|k| {
            if k == n - 1 {
                b
            } else {
                a + step * r::<T>(k as f64)
            }
        })
        .collect()
}

/// Samples the field on a grid, in parallel over nodes (row-major, y outer).
///
/// Nodes within the exclusion radius of any singularity image come back
/// `masked` with zero samples; wall rows are admitted (no-slip makes them
/// near-zero).
pub fn sample_grid<T: Real>(scene: &Scene<T>, spec: &GridSpec<T>) -> Result<Vec<GridRow<T>>> {
    if spec.nx == 0 || spec.ny == 0 {
        return Err(Error::Contract("grid must have nx ≥ 1 and ny ≥ 1".into()));
    }
    for v in [spec.x0, spec.x1, spec.y0, spec.y1] {
        if !v.is_finite() {
            return Err(Error::NonFinite("grid bounds".into()));
        }
    }
    let c = scene.geometry.scale_c();
    let y_lo = spec.y0.min(spec.y1);
    let y_hi = spec.y0.max(spec.y1);
    if y_lo * c < -r::<T>(1e-12) {
        return Err(Error::OutsideDomain(
            "grid extends below the bottom wall".into(),
        ));
    }
    if let Some(h) = self::DomainGeometry::canonical_height(&scene.geometry) {
        if y_hi * c > h + r::<T>(1e-12) {
            return Err(Error::OutsideDomain(
                "grid extends above the top wall".into(),
            ));
        }
    }
    let xs = linspace(spec.x0, spec.x1, spec.nx);
    let ys = linspace(spec.y0, spec.y1, spec.ny);
    let h_opt = scene.geometry.canonical_height();

    (0..spec.nx * spec.ny)
        .into_par_iter()
        .map(|idx| {
            let j = idx / spec.nx;
            let i = idx % spec.nx;
            let (x, y) = (xs[i], ys[j]);
            // Clamp rounding spill at the walls so boundary rows evaluate.
            let mut zc = C::new(x * c, y * c);
            if zc.im < T::zero() {
                zc.im = T::zero();
            }
            if let Some(h) = h_opt {
                if zc.im > h {
                    zc.im = h;
                }
            }
            let masked = scene
                .solutions
                .iter()
                .any(|s| periodic_distance(zc, s.spec().z0) < scene.exclusion_radius);
            if masked {
                return Ok(GridRow {
                    x,
                    y,
                    sample: FlowSample::zero(),
                    masked: true,
                });
            }
            let s = scene.sample(zc)?;
            Ok(GridRow {
                x,
                y,
                sample: FlowSample {
                    u: s.u,
                    v: s.v,
                    p_over_eta: s.p_over_eta * c,
                    omega: s.omega * c,
                },
                masked: false,
            })
        })
        .collect()
}

/// Why a streamline trace stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Came within the wall margin of a wall (or was seeded on one).
    WallContact,
    /// Came within the exclusion radius of a singularity image.
    SingularityContact,
    /// Exhausted the step budget.
    StepBudget,
    /// Returned to the seed (period-aware distance), a closed orbit.
    ClosedOrbit,
}

/// A traced streamline in physical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Streamline<T: Real> {
    /// Polyline vertices `(x, y)`; empty when seeded on a wall.
    pub points: Vec<(T, T)>,
    /// Stop reason.
    pub termination: Termination,
}

/// Traces one streamline with classical fixed-step 4th-order Runge–Kutta.
///
/// `seed` is physical; `step_h` is the canonical arc-parameter step.
/// Termination: wall approach (margin 1e−6 canonical), singularity approach
/// (scene exclusion radius), step budget, or closed-orbit detection
/// (period-aware return to the seed).
pub fn trace_streamline<T: Real>(
    scene: &Scene<T>,
    seed: C<T>,
    step_h: T,
    max_steps: usize,
) -> Result<Streamline<T>> {
    if !(step_h.is_finite() && step_h > T::zero()) {
        return Err(Error::Contract(format!(
            "streamline step must be positive (got {step_h})"
        )));
    }
    let c = scene.geometry.scale_c();
    let mut z = seed * c;
    if !scene.geometry.contains_canonical(z) {
        return Err(Error::OutsideDomain(format!(
            "streamline seed {} outside the fluid domain",
            crate::model::fmt_c(seed)
        )));
    }
    let margin = r::<T>(WALL_MARGIN);
    let near_wall = |z: C<T>| -> bool {
        if z.im < margin {
            return true;
        }
        match scene.geometry.canonical_height() {
            Some(h) => z.im > h - margin,
            None => false,
        }
    };
    if near_wall(z) {
        // No-slip: the velocity is (numerically) zero; nothing to trace.
        return Ok(Streamline {
            points: Vec::new(),
            termination: Termination::WallContact,
        });
    }
    let near_singularity = |z: C<T>| -> bool {
        scene
            .solutions
            .iter()
            .any(|s| periodic_distance(z, s.spec().z0) < scene.exclusion_radius)
    };
    if near_singularity(z) {
        return Err(Error::Proximity {
            radius: as_f64(scene.exclusion_radius),
        });
    }

    let vel = |z: C<T>| -> Option<C<T>> {
        if near_wall(z) || near_singularity(z) || !scene.geometry.contains_canonical(z) {
            return None;
        }
        let w = scene.velocity_unchecked(z);
        // dz/dt = u + iv = conj(w).
        Some(w.conj())
    };

    let seed_c = z;
    let half = r::<T>(0.5);
    let sixth = r::<T>(1.0 / 6.0);
    let two = r::<T>(2.0);
    let mut points = Vec::with_capacity(max_steps.min(1 << 16) + 1);
    points.push((z.re / c, z.im / c));
    let mut termination = Termination::StepBudget;
    // Closure arms only after the trace has genuinely left the seed's
    // neighborhood; otherwise slow regions would "close" immediately.
    let mut left_seed = false;
    for step in 0..max_steps {
        let k1 = match vel(z) {
            Some(v) => v,
            None => {
                termination = classify_stop(scene, z, margin);
                break;
            }
        };
        let try2 = z + k1 * (step_h * half);
        let try3;
        let try4;
        let k2 = match vel(try2) {
            Some(v) => v,
            None => {
                termination = classify_stop(scene, try2, margin);
                break;
            }
        };
        try3 = z + k2 * (step_h * half);
        let k3 = match vel(try3) {
            Some(v) => v,
            None => {
                termination = classify_stop(scene, try3, margin);
                break;
            }
        };
        try4 = z + k3 * step_h;
        let k4 = match vel(try4) {
            Some(v) => v,
            None => {
                termination = classify_stop(scene, try4, margin);
                break;
            }
        };
        let z_prev = z;
        z = z + (k1 + (k2 + k3) * two + k4) * (step_h * sixth);
        if near_wall(z) || !scene.geometry.contains_canonical(z) {
            termination = Termination::WallContact;
            break;
        }
        if near_singularity(z) {
            termination = Termination::SingularityContact;
            break;
        }
        points.push((z.re / c, z.im / c));
        let dist = periodic_distance(z, seed_c);
        if !left_seed && dist > step_h + step_h {
            left_seed = true;
        }
        if left_seed && step > 20 && dist < step_h * half {
            // Refine the endpoint to the closest approach along the final
            // segment (periodic-image aware), so the polyline closes to
            // O(step²) rather than O(step).
            let off = crate::model::reduced_offset(z_prev, seed_c);
            let dz = z - z_prev;
            let denom = dz.norm_sqr();
            if denom > T::zero() {
                let t = (-(off.re * dz.re + off.im * dz.im) / denom)
                    .max(T::zero())
                    .min(T::one());
                let zc = z_prev + dz * t;
                let last = points.len() - 1;
                points[last] = (zc.re / c, zc.im / c);
            }
            termination = Termination::ClosedOrbit;
            break;
        }
    }
    Ok(Streamline {
        points,
        termination,
    })
}

fn classify_stop<T: Real>(scene: &Scene<T>, z: C<T>, margin: T) -> Termination {
    let wall = z.im < margin
        || match scene.geometry.canonical_height() {
            Some(h) => z.im > h - margin,
            None => false,
        }
        || !scene.geometry.contains_canonical(z);
    if wall {
        Termination::WallContact
    } else {
        Termination::SingularityContact
    }
}

/// The three supported parametric-derivative identities (the target field
/// equals a derivative of the base field with respect to the singularity
/// position).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativePair {
    /// Force quadrupole = ∂/∂z₀ of the stresslet field, realized as the
    /// central difference in x₀ plus the closed-form source-dipole field
    /// (the anti-holomorphic position derivative of the stresslet is minus
    /// the source dipole).
    StressletToForceQuadrupole,
    /// Source dipole = +¼·(∂²/∂x₀² + ∂²/∂y₀²) of the Stokeslet field.
    StokesletToSourceDipole,
    /// Source quadrupole = −¼·(∂²/∂x₀² + ∂²/∂y₀²) of the stresslet field.
    StressletToSourceQuadrupole,
}

impl DerivativePair {
    /// Default finite-difference step for the pair.
    pub fn default_delta(&self) -> f64 {
        match self {
            DerivativePair::StressletToForceQuadrupole => 1e-4,
            _ => 1e-3,
        }
    }

    /// The closed-form target kind, for a given strength.
    pub fn target_kind<T: Real>(&self, mu: C<T>) -> SingularityKind<T> {
        match self {
            DerivativePair::StressletToForceQuadrupole => SingularityKind::ForceQuadrupole(mu),
            DerivativePair::StokesletToSourceDipole => SingularityKind::SourceDipole(mu),
            DerivativePair::StressletToSourceQuadrupole => SingularityKind::SourceQuadrupole(mu),
        }
    }
}

/// A finite-difference combination of shifted-singularity solutions acting
/// as a single velocity field.
#[derive(Debug, Clone)]
pub struct ParametricField<T: Real> {
    terms: Vec<(T, Solution<T>)>,
}

impl<T: Real> ParametricField<T> {
    /// Combined `u − iv` at canonical `z`.
    pub fn velocity(&self, z: C<T>) -> C<T> {
        let mut acc = C::<T>::zero();
        for (coeff, sol) in &self.terms {
            acc = acc + sol.velocity(z) * *coeff;
        }
        acc
    }

    /// Number of solution terms in the stencil.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

/// Builds the finite-difference field realizing a supported derivative
/// identity, on either domain.
///
/// `z0` is canonical; `geometry` selects channel vs half-plane; `delta` is
/// the step in `x₀`/`y₀` (0 picks the pair default). The Wirtinger
/// derivatives are formed as real-direction central differences:
/// `∂/∂x₀` for the first-derivative pair, the five-point Laplacian
/// `∂²/∂x₀² + ∂²/∂y₀²` for the mixed-second pairs.
pub fn parametric_derivative_build<T: Real>(
    pair: DerivativePair,
    mu: C<T>,
    z0: C<T>,
    geometry: &DomainGeometry<T>,
    delta: T,
    tolerance: T,
) -> Result<ParametricField<T>> {
    let d = if delta == T::zero() {
        r(pair.default_delta())
    } else {
        delta
    };
    if !(d.is_finite() && d > T::zero()) {
        return Err(Error::Contract(format!(
            "finite-difference step must be positive (got {d})"
        )));
    }
    if let DomainGeometry::Channel(g) = geometry {
        let room = z0.im.min(g.canonical_h - z0.im);
        if d >= room {
            return Err(Error::Contract(format!(
                "finite-difference step {d} leaves the channel (clearance {room})"
            )));
        }
    } else if d >= z0.im {
        return Err(Error::Contract(format!(
            "finite-difference step {d} crosses the wall (clearance {})",
            z0.im
        )));
    }

    let build = |kind: SingularityKind<T>, at: C<T>| -> Result<Solution<T>> {
        Ok(match geometry {
            DomainGeometry::Channel(g) => {
                Solution::Channel(ChannelSolution::build(kind, at, g, tolerance)?)
            }
            DomainGeometry::HalfPlane(_) => {
                Solution::HalfPlane(HalfPlaneSolution::build(kind, at)?)
            }
        })
    };

    let jj = crate::scalar::i::<T>();
    let mut terms: Vec<(T, Solution<T>)> = Vec::new();
    match pair {
        DerivativePair::StressletToForceQuadrupole => {
            let half_over_d = r::<T>(0.5) / d;
            let stress = SingularityKind::Stresslet(mu);
            terms.push((half_over_d, build(stress, z0 + C::new(d, T::zero()))?));
            terms.push((-half_over_d, build(stress, z0 - C::new(d, T::zero()))?));
            terms.push((T::one(), build(SingularityKind::SourceDipole(mu), z0)?));
        }
        DerivativePair::StokesletToSourceDipole | DerivativePair::StressletToSourceQuadrupole => {
            let base: SingularityKind<T> = match pair {
                DerivativePair::StokesletToSourceDipole => SingularityKind::Stokeslet(mu),
                _ => SingularityKind::Stresslet(mu),
            };
            let sign = match pair {
                DerivativePair::StokesletToSourceDipole => T::one(),
                _ => -T::one(),
            };
            let cc = sign * r::<T>(0.25) / (d * d);
            terms.push((-r::<T>(4.0) * cc, build(base, z0)?));
            terms.push((cc, build(base, z0 + C::new(d, T::zero()))?));
            terms.push((cc, build(base, z0 - C::new(d, T::zero()))?));
            terms.push((cc, build(base, z0 + jj * d)?));
            terms.push((cc, build(base, z0 - jj * d)?));
        }
    }
    Ok(ParametricField { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn linspace_endpoints_exact() {
        let v = linspace(0.0_f64, 2.0, 5);
        assert_eq!(v, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(linspace(1.5_f64, 9.0, 1), vec![1.5]);
    }

    #[test]
    fn empty_scene_is_zero_field() {
        let geom = ChannelGeometry::canonical(2.0_f64).unwrap();
        let scene = Scene::new(DomainGeometry::Channel(geom), vec![], 1.0).unwrap();
        let s = scene.sample(cx(1.0, 1.0)).unwrap();
        assert_eq!((s.u, s.v, s.p_over_eta, s.omega), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn outside_domain_rejected() {
        let geom = ChannelGeometry::canonical(2.0_f64).unwrap();
        let scene = Scene::new(DomainGeometry::Channel(geom), vec![], 1.0).unwrap();
        assert!(matches!(
            scene.sample(cx(1.0, -0.5)),
            Err(Error::OutsideDomain(_))
        ));
        assert!(matches!(
            scene.sample(cx(1.0, 2.5)),
            Err(Error::OutsideDomain(_))
        ));
    }
}
