//! Domain types, the conformal map between the period strip and an annulus,
//! and canonicalization of general-period problems to the 2π-period frame.
//!
//! Geometry conventions (canonical frame, period `l = 2π`):
//!
//! * the channel occupies `0 ≤ Im z ≤ h` with no-slip walls at `Im z = 0`
//!   and `Im z = h`;
//! * the conformal map `ζ = e^{iz}` transplants one period cell onto the
//!   annulus `ρ < |ζ| < 1` with `ρ = e^{−h}`; the lower wall maps to
//!   `|ζ| = 1`, the upper wall to `|ζ| = ρ`;
//! * the half-plane is the `ρ → 0` limit: `Im z > 0` maps to the punctured
//!   unit disc `0 < |ζ| < 1`.

use crate::error::{Error, Result};
use crate::scalar::{as_f64, i, r, Real, C};

/// Minimum relative wall clearance admitted for a singularity position.
///
/// The coefficient formulas blow up as the singularity touches a wall, so
/// positions with `|ζ₀|` within this relative margin of `ρ` or `1` are
/// rejected at validation time.
pub const WALL_CLEARANCE: f64 = 1e-8;

/// The five implemented point-singularity types, each carrying a complex
/// strength `μ` in the velocity-scale units of its local form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularityKind<T: Real> {
    /// Point force; local velocity `−μ̄ log|z−z₀|² + μ (z̄−z̄₀)/(z−z₀)`.
    Stokeslet(C<T>),
    /// Force dipole (torque-free); `−μ̄/(z̄−z̄₀) − μ (z̄−z̄₀)/(z−z₀)²`.
    Stresslet(C<T>),
    /// Force quadrupole; `−μ̄/(z̄−z̄₀)² − 2μ (z̄−z̄₀)/(z−z₀)³`.
    ForceQuadrupole(C<T>),
    /// Source dipole (potential); `−μ/(z−z₀)²`.
    SourceDipole(C<T>),
    /// Source quadrupole (potential); `−2μ/(z−z₀)³`.
    SourceQuadrupole(C<T>),
}

impl<T: Real> SingularityKind<T> {
    /// All five kinds with the given strength, in canonical order.
    pub fn all(mu: C<T>) -> [Self; 5] {
        [
            Self::Stokeslet(mu),
            Self::Stresslet(mu),
            Self::ForceQuadrupole(mu),
            Self::SourceDipole(mu),
            Self::SourceQuadrupole(mu),
        ]
    }

    /// The complex strength `μ`.
    pub fn strength(&self) -> C<T> {
        match *self {
            Self::Stokeslet(mu)
            | Self::Stresslet(mu)
            | Self::ForceQuadrupole(mu)
            | Self::SourceDipole(mu)
            | Self::SourceQuadrupole(mu) => mu,
        }
    }

    /// Same kind with a different strength.
    pub fn with_strength(&self, mu: C<T>) -> Self {
        match self {
            Self::Stokeslet(_) => Self::Stokeslet(mu),
            Self::Stresslet(_) => Self::Stresslet(mu),
            Self::ForceQuadrupole(_) => Self::ForceQuadrupole(mu),
            Self::SourceDipole(_) => Self::SourceDipole(mu),
            Self::SourceQuadrupole(_) => Self::SourceQuadrupole(mu),
        }
    }

    /// Stable machine name (used by configuration files and reports).
    pub fn name(&self) -> &'static str {
        match self {
            Self::Stokeslet(_) => "stokeslet",
            Self::Stresslet(_) => "stresslet",
            Self::ForceQuadrupole(_) => "force_quadrupole",
            Self::SourceDipole(_) => "source_dipole",
            Self::SourceQuadrupole(_) => "source_quadrupole",
        }
    }

    /// Parses a machine name together with a strength.
    pub fn from_name(name: &str, mu: C<T>) -> Result<Self> {
        Ok(match name {
            "stokeslet" => Self::Stokeslet(mu),
            "stresslet" => Self::Stresslet(mu),
            "force_quadrupole" => Self::ForceQuadrupole(mu),
            "source_dipole" => Self::SourceDipole(mu),
            "source_quadrupole" => Self::SourceQuadrupole(mu),
            other => {
                return Err(Error::Contract(format!(
                    "unknown singularity kind {other:?} (expected one of \
                     stokeslet, stresslet, force_quadrupole, source_dipole, \
                     source_quadrupole)"
                )))
            }
        })
    }

    /// Pole order `m` of the local Goursat form.
    ///
    /// This is the order of the pole carried by `f` (stresslet: 1, force
    /// quadrupole: 2) or by `g` (source dipole: 1, source quadrupole: 2);
    /// the stokeslet is logarithmic (order 0). Used by the period-rescaling
    /// convention: strengths convert with `c^m` (a convention of this
    /// implementation; see [`canonicalize`]).
    pub fn pole_order(&self) -> u32 {
        match self {
            Self::Stokeslet(_) => 0,
            Self::Stresslet(_) | Self::SourceDipole(_) => 1,
            Self::ForceQuadrupole(_) | Self::SourceQuadrupole(_) => 2,
        }
    }

    /// True iff the strength is exactly zero (the field is identically zero).
    pub fn is_zero(&self) -> bool {
        let mu = self.strength();
        mu.re.is_zero() && mu.im.is_zero()
    }

    fn validate(&self) -> Result<()> {
        let mu = self.strength();
        if !(mu.re.is_finite() && mu.im.is_finite()) {
            return Err(Error::NonFinite(format!(
                "strength of {} is not finite",
                self.name()
            )));
        }
        Ok(())
    }
}

/// Exact local (free-space) velocity `u − iv` of a singularity at `z₀`,
/// evaluated at `z`.
///
/// Every bounded-domain solution equals this plus a remainder that stays
/// bounded as `z → z₀`; the validation module measures exactly that.
pub fn local_velocity<T: Real>(kind: &SingularityKind<T>, z0: C<T>, z: C<T>) -> C<T> {
    let mu = kind.strength();
    let mub = mu.conj();
    let dz = z - z0;
    let dzb = dz.conj();
    match kind {
        SingularityKind::Stokeslet(_) => -mub * dz.norm_sqr().ln() + mu * dzb / dz,
        SingularityKind::Stresslet(_) => -mub / dzb - mu * dzb / (dz * dz),
        SingularityKind::ForceQuadrupole(_) => {
            -mub / (dzb * dzb) - (mu + mu) * dzb / (dz * dz * dz)
        }
        SingularityKind::SourceDipole(_) => -mu / (dz * dz),
        SingularityKind::SourceQuadrupole(_) => -(mu + mu) / (dz * dz * dz),
    }
}

/// Channel geometry: physical period/height plus the canonical (2π-period)
/// parameters everything downstream works in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGeometry<T: Real> {
    /// Physical period along the wall direction.
    pub period_l: T,
    /// Physical channel height.
    pub height_h: T,
    /// Canonical height `h = 2π·height/period`; walls at `Im z ∈ {0, h}`.
    pub canonical_h: T,
    /// Inner annulus radius `ρ = e^{−h}` (so `h = −log ρ` exactly).
    pub rho: T,
    /// Rescaling factor `c = 2π/period` mapping physical to canonical
    /// coordinates.
    pub scale_c: T,
}

impl<T: Real> ChannelGeometry<T> {
    /// Validates and derives the canonical parameters.
    pub fn new(period_l: T, height_h: T) -> Result<Self> {
        if !(period_l.is_finite() && height_h.is_finite()) {
            return Err(Error::NonFinite("channel geometry".into()));
        }
        if period_l <= T::zero() || height_h <= T::zero() {
            return Err(Error::InvalidGeometry(format!(
                "period and height must be positive (got period={period_l}, \
                 height={height_h})"
            )));
        }
        let two_pi = T::PI() + T::PI();
        let scale_c = two_pi / period_l;
        let canonical_h = scale_c * height_h;
        let rho = (-canonical_h).exp();
        if !(rho > T::zero() && rho < T::one()) {
            return Err(Error::InvalidGeometry(format!(
                "aspect ratio out of range: canonical height {canonical_h}"
            )));
        }
        Ok(Self {
            period_l,
            height_h,
            canonical_h,
            rho,
            scale_c,
        })
    }

    /// Canonical geometry with period 2π and the given canonical height.
    pub fn canonical(h: T) -> Result<Self> {
        let two_pi = T::PI() + T::PI();
        Self::new(two_pi, h)
    }
}

/// Half-plane geometry (single wall at `Im z = 0`, fluid above).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlaneGeometry<T: Real> {
    /// Physical period along the wall.
    pub period_l: T,
    /// Rescaling factor `c = 2π/period`.
    pub scale_c: T,
}

impl<T: Real> HalfPlaneGeometry<T> {
    /// Validates the period and derives the rescaling factor.
    pub fn new(period_l: T) -> Result<Self> {
        if !period_l.is_finite() {
            return Err(Error::NonFinite("half-plane geometry".into()));
        }
        if period_l <= T::zero() {
            return Err(Error::InvalidGeometry(format!(
                "period must be positive (got {period_l})"
            )));
        }
        let two_pi = T::PI() + T::PI();
        Ok(Self {
            period_l,
            scale_c: two_pi / period_l,
        })
    }

    /// Canonical (2π-period) half-plane.
    pub fn canonical() -> Self {
        Self::new(T::PI() + T::PI()).expect("2π is a valid period")
    }
}

/// A singularity in canonical coordinates, with its annulus image
/// `ζ₀ = e^{iz₀}` kept in exact correspondence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularitySpec<T: Real> {
    /// Kind and strength.
    pub kind: SingularityKind<T>,
    /// Canonical position, `0 < Im z₀ < h` (channel) or `Im z₀ > 0`
    /// (half-plane).
    pub z0: C<T>,
    /// Annulus image `e^{iz₀}`.
    pub zeta0: C<T>,
}

impl<T: Real> SingularitySpec<T> {
    /// Validated channel spec; rejects positions outside the channel or
    /// within the wall clearance margin.
    pub fn channel(kind: SingularityKind<T>, z0: C<T>, geom: &ChannelGeometry<T>) -> Result<Self> {
        kind.validate()?;
        if !(z0.re.is_finite() && z0.im.is_finite()) {
            return Err(Error::NonFinite("singularity position".into()));
        }
        let zeta0 = zeta_of_z(z0);
        let clearance = r::<T>(WALL_CLEARANCE);
        let lo = geom.rho * (T::one() + clearance);
        let hi = T::one() - clearance;
        let az = zeta0.norm();
        if !(az >= lo && az <= hi) {
            return Err(Error::InvalidSingularity(format!(
                "position Im z0 = {} outside the channel interior \
                 (requires clearance {:.1e} from both walls, height {})",
                z0.im,
                WALL_CLEARANCE,
                geom.canonical_h
            )));
        }
        Ok(Self { kind, z0, zeta0 })
    }

    /// Validated half-plane spec; requires `Im z₀ > 0` with clearance.
    pub fn halfplane(kind: SingularityKind<T>, z0: C<T>) -> Result<Self> {
        kind.validate()?;
        if !(z0.re.is_finite() && z0.im.is_finite()) {
            return Err(Error::NonFinite("singularity position".into()));
        }
        let zeta0 = zeta_of_z(z0);
        let az = zeta0.norm();
        let hi = T::one() - r::<T>(WALL_CLEARANCE);
        if !(az > T::zero() && az <= hi) {
            return Err(Error::InvalidSingularity(format!(
                "position Im z0 = {} must be above the wall with clearance {:.1e}",
                z0.im, WALL_CLEARANCE
            )));
        }
        Ok(Self { kind, z0, zeta0 })
    }
}

/// Velocity, pressure, and vorticity at a point: the universal evaluation
/// result. Pressure is reported as `p/η`; the viscosity enters only in force
/// computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSample<T: Real> {
    /// Horizontal velocity `u`.
    pub u: T,
    /// Vertical velocity `v`.
    pub v: T,
    /// Pressure over viscosity `p/η`.
    pub p_over_eta: T,
    /// Vorticity `ω = ∂v/∂x − ∂u/∂y`.
    pub omega: T,
}

impl<T: Real> FlowSample<T> {
    /// All-zero sample.
    pub fn zero() -> Self {
        Self {
            u: T::zero(),
            v: T::zero(),
            p_over_eta: T::zero(),
            omega: T::zero(),
        }
    }

    /// True iff every component is finite.
    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite() && self.p_over_eta.is_finite() && self.omega.is_finite()
    }
}

/// The conformal map `ζ = e^{iz}` from the period strip to the annulus.
#[inline]
pub fn zeta_of_z<T: Real>(z: C<T>) -> C<T> {
    (i::<T>() * z).exp()
}

/// Inverse map `z = −i log ζ` with the principal branch, real part
/// normalized to `[0, 2π)`.
pub fn z_of_zeta<T: Real>(zeta: C<T>) -> Result<C<T>> {
    if zeta.re.is_zero() && zeta.im.is_zero() {
        return Err(Error::Contract("z_of_zeta: zeta must be nonzero".into()));
    }
    if !(zeta.re.is_finite() && zeta.im.is_finite()) {
        return Err(Error::NonFinite("z_of_zeta input".into()));
    }
    let z = -i::<T>() * zeta.ln();
    let two_pi = T::PI() + T::PI();
    let re = if z.re < T::zero() { z.re + two_pi } else { z.re };
    Ok(C::new(re, z.im))
}

/// Per-singularity record of the strength conversion applied by
/// [`canonicalize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrengthConversion<T: Real> {
    /// Index into the input singularity list.
    pub index: usize,
    /// Pole order `m` of the kind's local Goursat form.
    pub pole_order: u32,
    /// Multiplicative factor `c^m` applied to the strength.
    pub factor: T,
}

fn scale_strength<T: Real>(kind: &SingularityKind<T>, c: T) -> (SingularityKind<T>, T) {
    let m = kind.pole_order();
    let mut factor = T::one();
    for _ in 0..m {
        factor = factor * c;
    }
    (kind.with_strength(kind.strength() * factor), factor)
}

/// Rescales a physical-period channel problem to the canonical 2π-period
/// frame.
///
/// Positions scale by `c = 2π/period`; strengths convert with the factor
/// `c^m`, `m` the pole order of the kind's local Goursat form (stokeslet:
/// unchanged — its local form is logarithmic). The `c^m` rule is a
/// convention of this implementation, chosen so the canonical Goursat
/// functions reproduce the physical ones under the substitution `z ↦ cz`;
/// it is reported per singularity so callers can audit it.
pub fn canonicalize<T: Real>(
    period_l: T,
    height_h: T,
    singularities: &[(SingularityKind<T>, C<T>)],
) -> Result<(
    ChannelGeometry<T>,
    Vec<SingularitySpec<T>>,
    Vec<StrengthConversion<T>>,
)> {
    let geom = ChannelGeometry::new(period_l, height_h)?;
    let c = geom.scale_c;
    let mut specs = Vec::with_capacity(singularities.len());
    let mut report = Vec::with_capacity(singularities.len());
    for (index, (kind, z0_phys)) in singularities.iter().enumerate() {
        let (kind_c, factor) = scale_strength(kind, c);
        let z0 = *z0_phys * c;
        let spec = SingularitySpec::channel(kind_c, z0, &geom).map_err(|e| {
            Error::InvalidSingularity(format!("singularity #{index}: {e}"))
        })?;
        specs.push(spec);
        report.push(StrengthConversion {
            index,
            pole_order: kind.pole_order(),
            factor,
        });
    }
    Ok((geom, specs, report))
}

/// Half-plane analogue of [`canonicalize`].
pub fn canonicalize_halfplane<T: Real>(
    period_l: T,
    singularities: &[(SingularityKind<T>, C<T>)],
) -> Result<(
    HalfPlaneGeometry<T>,
    Vec<SingularitySpec<T>>,
    Vec<StrengthConversion<T>>,
)> {
    let geom = HalfPlaneGeometry::new(period_l)?;
    let c = geom.scale_c;
    let mut specs = Vec::with_capacity(singularities.len());
    let mut report = Vec::with_capacity(singularities.len());
    for (index, (kind, z0_phys)) in singularities.iter().enumerate() {
        let (kind_c, factor) = scale_strength(kind, c);
        let spec = SingularitySpec::halfplane(kind_c, *z0_phys * c).map_err(|e| {
            Error::InvalidSingularity(format!("singularity #{index}: {e}"))
        })?;
        specs.push(spec);
        report.push(StrengthConversion {
            index,
            pole_order: kind.pole_order(),
            factor,
        });
    }
    Ok((geom, specs, report))
}

/// Distance from `z` to the nearest periodic image of `z0` (period 2π in the
/// real direction).
pub fn periodic_distance<T: Real>(z: C<T>, z0: C<T>) -> T {
    let two_pi = T::PI() + T::PI();
    let mut dx = (z.re - z0.re) % two_pi;
    if dx > T::PI() {
        dx = dx - two_pi;
    }
    if dx < -T::PI() {
        dx = dx + two_pi;
    }
    let dy = z.im - z0.im;
    (dx * dx + dy * dy).sqrt()
}

/// `z − z₀` with the real part reduced to the nearest period (used before
/// evaluating local forms so every periodic image is treated alike).
pub fn reduced_offset<T: Real>(z: C<T>, z0: C<T>) -> C<T> {
    let two_pi = T::PI() + T::PI();
    let d = z - z0;
    let shift = (d.re / two_pi).round();
    C::new(d.re - shift * two_pi, d.im)
}

/// `ζ − ζ₀` computed as `ζ₀·(e^{iΔz} − 1)` with the period-reduced offset
/// and a cancellation-free complex `expm1`; accurate arbitrarily close to
/// the singularity and to all of its periodic images.
pub fn zeta_diff<T: Real>(z: C<T>, z0: C<T>, zeta0: C<T>) -> C<T> {
    let d = i::<T>() * reduced_offset(z, z0);
    zeta0 * cexpm1(d)
}

/// `e^w − 1` for complex `w` without cancellation near `w = 0`.
pub fn cexpm1<T: Real>(w: C<T>) -> C<T> {
    let half = r::<T>(0.5);
    let s = (w.im * half).sin();
    let re = w.re.exp_m1() * w.im.cos() - (s * s + s * s);
    let im = w.re.exp() * w.im.sin();
    C::new(re, im)
}

/// Debug rendering of a complex value for error messages.
pub(crate) fn fmt_c<T: Real>(z: C<T>) -> String {
    format!("{:+.6}{:+.6}i", as_f64(z.re), as_f64(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    #[test]
    fn map_is_identity_at_origin() {
        let z = cx::<f64>(0.0, 0.0);
        assert_eq!(zeta_of_z(z), cx(1.0, 0.0));
    }

    #[test]
    fn strength_conversion_factors() {
        let mu = cx::<f64>(1.0, 0.0);
        let (k, f) = scale_strength(&SingularityKind::Stresslet(mu), 0.5);
        assert_eq!(f, 0.5);
        assert_eq!(k.strength(), cx(0.5, 0.0));
        let (_, f2) = scale_strength(&SingularityKind::ForceQuadrupole(mu), 0.5);
        assert_eq!(f2, 0.25);
        let (_, f0) = scale_strength(&SingularityKind::Stokeslet(mu), 0.5);
        assert_eq!(f0, 1.0);
    }
}
