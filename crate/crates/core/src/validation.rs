//! Reusable residual and identity checks: no-slip, periodicity, local
//! singular behaviour, parametric-derivative identities, finite-difference
//! PDE residuals, wall-forcing cross-checks, coefficient decay, and
//! cross-method comparison.
//!
//! All random sampling is seeded (ChaCha8), so every report is reproducible
//! bit-for-bit for a given seed.

use crate::channel_series::ChannelSolution;
use crate::error::Result;
use crate::flow::{parametric_derivative_build, DerivativePair, DomainGeometry, Scene, Solution};
use crate::model::{local_velocity, periodic_distance, zeta_diff};
use crate::scalar::{as_f64, cx, r, re_c, Real, C};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one validation check.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T: Real> {
    /// Check name (stable identifier for reports).
    pub name: String,
    /// Worst observed residual (meaning depends on the check).
    pub max_residual: T,
    /// Number of samples inspected.
    pub samples: usize,
    /// Tolerance the check was held to.
    pub tolerance: T,
    /// `max_residual ≤ tolerance`.
    pub pass: bool,
}

impl<T: Real> ValidationReport<T> {
    /// Builds a report; `pass` is derived, never stored independently.
    pub fn new(name: impl Into<String>, max_residual: T, samples: usize, tolerance: T) -> Self {
        Self {
            name: name.into(),
            max_residual,
            samples,
            tolerance,
            pass: max_residual <= tolerance,
        }
    }
}

/// Max `|u − iv|` over equispaced wall samples (both walls for a channel).
pub fn noslip_residual<T: Real>(
    scene: &Scene<T>,
    samples_per_wall: usize,
    tolerance: T,
) -> ValidationReport<T> {
    let two_pi = T::PI() + T::PI();
    let n = samples_per_wall.max(1);
    let mut worst = T::zero();
    let mut count = 0usize;
    let walls: Vec<T> = match scene.geometry {
        DomainGeometry::Channel(g) => vec![T::zero(), g.canonical_h],
        DomainGeometry::HalfPlane(_) => vec![T::zero()],
    };
    for y in walls {
        for j in 0..n {
            let x = two_pi * r::<T>(j as f64) / r::<T>(n as f64);
            let w = scene.velocity_unchecked(C::new(x, y));
            worst = worst.max(w.norm());
            count += 1;
        }
    }
    ValidationReport::new("no_slip", worst, count, tolerance)
}

/// Seeded interior sample points avoiding the singularity images.
pub fn interior_points<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
) -> Vec<C<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_pi = std::f64::consts::TAU;
    let mut pts = Vec::with_capacity(n_points);
    let mut guard = 0usize;
    while pts.len() < n_points && guard < 1000 * n_points.max(1) {
        guard += 1;
        let x: f64 = rng.gen::<f64>() * two_pi;
        let yf: f64 = rng.gen();
        let y = y_lo + (y_hi - y_lo) * r::<T>(yf);
        let z = C::new(r::<T>(x), y);
        if scene
            .solutions
            .iter()
            .any(|s| periodic_distance(z, s.spec().z0) < exclusion)
        {
            continue;
        }
        pts.push(z);
    }
    pts
}

/// Max `|w(z+2π) − w(z)|` over seeded interior points.
pub fn periodicity_residual<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
    tolerance: T,
) -> ValidationReport<T> {
    let two_pi = T::PI() + T::PI();
    let pts = interior_points(scene, n_points, seed, y_lo, y_hi, exclusion);
    let mut worst = T::zero();
    for &z in &pts {
        let d = (scene.velocity_unchecked(z + re_c(two_pi)) - scene.velocity_unchecked(z)).norm();
        worst = worst.max(d);
    }
    ValidationReport::new("periodicity", worst, pts.len(), tolerance)
}

/// Max `|q(z+2π) − q(z)|` for `q = 4f′ = p/η − iω` over seeded points.
pub fn pressure_periodicity_residual<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
    tolerance: T,
) -> ValidationReport<T> {
    let two_pi = T::PI() + T::PI();
    let pts = interior_points(scene, n_points, seed, y_lo, y_hi, exclusion);
    let mut worst = T::zero();
    for &z in &pts {
        let d = (scene.four_f_prime_unchecked(z + re_c(two_pi))
            - scene.four_f_prime_unchecked(z))
        .norm();
        worst = worst.max(d);
    }
    ValidationReport::new("pressure_periodicity", worst, pts.len(), tolerance)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = r::<T>(xs.len() as f64);
    let mut sx = T::zero();
    let mut sy = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sx = sx + x;
        sy = sy + y;
    }
    let mx = sx / n;
    let my = sy / n;
    let mut num = T::zero();
    let mut den = T::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        num = num + (x - mx) * (y - my);
        den = den + (x - mx) * (x - mx);
    }
    num / den
}

/// Growth exponent of the local-form remainder.
///
/// Evaluates `w − w_local` on rays around the singularity at
/// logarithmically spaced radii and fits `log(remainder)` against
/// `log(radius)`; the reported residual is the growth exponent
/// (`≈ 0` bounded, `> 0` would mean the remainder diverges at the
/// singularity).
pub fn local_singularity_residual<T: Real>(
    solution: &Solution<T>,
    radii: &[T],
    n_rays: usize,
    exponent_tolerance: T,
) -> ValidationReport<T> {
    let spec = solution.spec();
    let z0 = spec.z0;
    let two_pi = T::PI() + T::PI();
    let mut lr = Vec::with_capacity(radii.len());
    let mut lm = Vec::with_capacity(radii.len());
    for &rad in radii {
        let mut mx = T::zero();
        for k in 0..n_rays {
            let th = two_pi * r::<T>(k as f64) / r::<T>(n_rays as f64);
            let z = z0 + C::new(th.cos(), th.sin()) * rad;
            let rem = (solution.velocity(z) - local_velocity(&spec.kind, z0, z)).norm();
            mx = mx.max(rem);
        }
        lr.push(rad.ln());
        lm.push(mx.max(r(1e-300)).ln());
    }
    let exponent = -fit_slope(&lr, &lm);
    ValidationReport::new(
        format!("local_form_{}", spec.kind.name()),
        exponent,
        radii.len() * n_rays,
        exponent_tolerance,
    )
}

/// Default radii for [`local_singularity_residual`]: nine log-spaced radii
/// from 1e−1 down to 1e−5.
pub fn default_local_radii<T: Real>() -> Vec<T> {
    (0..9)
        .map(|k| r::<T>(10f64.powf(-1.0 - k as f64 * 0.5)))
        .collect()
}

/// Relative deviation between a finite-difference derivative field and the
/// closed-form target solution at the given points.
///
/// The deviation is scaled by the max target magnitude over the sample set,
/// floored at 1e−12.
pub fn derivative_identity_check<T: Real>(
    pair: DerivativePair,
    mu: C<T>,
    z0: C<T>,
    geometry: &DomainGeometry<T>,
    delta: T,
    points: &[C<T>],
    tolerance: T,
) -> Result<ValidationReport<T>> {
    let tol_build = r::<T>(1e-12);
    let fd = parametric_derivative_build(pair, mu, z0, geometry, delta, tol_build)?;
    let target = match geometry {
        DomainGeometry::Channel(g) => Solution::Channel(ChannelSolution::build(
            pair.target_kind(mu),
            z0,
            g,
            tol_build,
        )?),
        DomainGeometry::HalfPlane(_) => Solution::HalfPlane(
            crate::halfplane::HalfPlaneSolution::build(pair.target_kind(mu), z0)?,
        ),
    };
    let mut max_diff = T::zero();
    let mut max_tgt = r::<T>(1e-12);
    for &z in points {
        let t = target.velocity(z);
        let d = (fd.velocity(z) - t).norm();
        max_diff = max_diff.max(d);
        max_tgt = max_tgt.max(t.norm());
    }
    let name = match pair {
        DerivativePair::StressletToForceQuadrupole => "deriv_stresslet_to_force_quadrupole",
        DerivativePair::StokesletToSourceDipole => "deriv_stokeslet_to_source_dipole",
        DerivativePair::StressletToSourceQuadrupole => "deriv_stresslet_to_source_quadrupole",
    };
    Ok(ValidationReport::new(
        name,
        max_diff / max_tgt,
        points.len(),
        tolerance,
    ))
}

/// Scaled finite-difference divergence `|∂u/∂x + ∂v/∂y|` at seeded interior
/// points (central differences, default step 1e−5).
pub fn incompressibility_residual<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
    step: T,
    tolerance: T,
) -> ValidationReport<T> {
    let pts = interior_points(scene, n_points, seed, y_lo, y_hi, exclusion);
    let d = step;
    let jj = crate::scalar::i::<T>();
    let tiny = r::<T>(1e-30);
    let half = r::<T>(0.5);
    let mut worst = T::zero();
    for &z in &pts {
        let wxp = scene.velocity_unchecked(z + re_c(d));
        let wxm = scene.velocity_unchecked(z - re_c(d));
        let wyp = scene.velocity_unchecked(z + jj * d);
        let wym = scene.velocity_unchecked(z - jj * d);
        let wx = (wxp - wxm) * (half / d);
        let wy = (wyp - wym) * (half / d);
        let div = wx.re - wy.im; // u_x + v_y with w = u − iv
        let scale = wx.norm() + wy.norm() + tiny;
        worst = worst.max(div.abs() / scale);
    }
    ValidationReport::new("incompressibility", worst, pts.len(), tolerance)
}

/// Scaled finite-difference Stokes-momentum residual
/// `|∇p/η − ∇²(u,v)|` at seeded interior points (5-point stencils,
/// default step 1e−4).
pub fn momentum_residual<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
    step: T,
    tolerance: T,
) -> ValidationReport<T> {
    let pts = interior_points(scene, n_points, seed, y_lo, y_hi, exclusion);
    let d = step;
    let jj = crate::scalar::i::<T>();
    let tiny = r::<T>(1e-30);
    let half = r::<T>(0.5);
    let two = r::<T>(2.0);
    let p_eta = |z: C<T>| scene.four_f_prime_unchecked(z).re;
    let mut worst = T::zero();
    for &z in &pts {
        let w0 = scene.velocity_unchecked(z);
        let wxp = scene.velocity_unchecked(z + re_c(d));
        let wxm = scene.velocity_unchecked(z - re_c(d));
        let wyp = scene.velocity_unchecked(z + jj * d);
        let wym = scene.velocity_unchecked(z - jj * d);
        let wxx = (wxp - w0 * two + wxm) / (d * d);
        let wyy = (wyp - w0 * two + wym) / (d * d);
        let lap = wxx + wyy; // ∇²u − i∇²v
        let px = (p_eta(z + re_c(d)) - p_eta(z - re_c(d))) * (half / d);
        let py = (p_eta(z + jj * d) - p_eta(z - jj * d)) * (half / d);
        let res = C::new(lap.re - px, -lap.im - py).norm();
        let scale = lap.norm() + (px * px + py * py).sqrt() + tiny;
        worst = worst.max(res / scale);
    }
    ValidationReport::new("momentum_balance", worst, pts.len(), tolerance)
}

/// Scaled deviation between reported vorticity and the finite-difference
/// curl of the velocity at seeded interior points.
pub fn vorticity_consistency<T: Real>(
    scene: &Scene<T>,
    n_points: usize,
    seed: u64,
    y_lo: T,
    y_hi: T,
    exclusion: T,
    step: T,
    tolerance: T,
) -> ValidationReport<T> {
    let pts = interior_points(scene, n_points, seed, y_lo, y_hi, exclusion);
    let d = step;
    let jj = crate::scalar::i::<T>();
    let tiny = r::<T>(1e-30);
    let half = r::<T>(0.5);
    let mut worst = T::zero();
    for &z in &pts {
        let wx = (scene.velocity_unchecked(z + re_c(d)) - scene.velocity_unchecked(z - re_c(d)))
            * (half / d);
        let wy = (scene.velocity_unchecked(z + jj * d) - scene.velocity_unchecked(z - jj * d))
            * (half / d);
        // ω = ∂v/∂x − ∂u/∂y with w = u − iv.
        let omega_fd = -wx.im - wy.re;
        let omega = -scene.four_f_prime_unchecked(z).im;
        let scale = wx.norm() + wy.norm() + tiny;
        worst = worst.max((omega_fd - omega).abs() / scale);
    }
    ValidationReport::new("vorticity_consistency", worst, pts.len(), tolerance)
}

fn pole_sum<T: Real>(cluster: &[(u32, C<T>)], d: C<T>) -> C<T> {
    let mut acc = C::<T>::zero();
    for &(k, c) in cluster {
        let mut dk = d;
        for _ in 1..k {
            dk = dk * d;
        }
        acc = acc + c / dk;
    }
    acc
}

fn pole_sum_prime<T: Real>(cluster: &[(u32, C<T>)], d: C<T>) -> C<T> {
    let mut acc = C::<T>::zero();
    for &(k, c) in cluster {
        let mut dk1 = d * d;
        for _ in 1..k {
            dk1 = dk1 * d;
        }
        acc = acc - c * r::<T>(k as f64) / dk1;
    }
    acc
}

#[derive(Clone, Copy)]
struct Kahan<T: Real> {
    s: C<T>,
    c: C<T>,
}

impl<T: Real> Kahan<T> {
    fn new() -> Self {
        Self {
            s: C::<T>::zero(),
            c: C::<T>::zero(),
        }
    }
    fn add(&mut self, x: C<T>) {
        let y = x - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }
}

/// Cross-checks the closed-form wall-forcing coefficients against discrete
/// Fourier transforms of the known wall data.
///
/// The no-slip conditions equate the regular series on each wall to minus a
/// known function: on the bottom wall
/// `K_B = m_w log|ζ−ζ₀|² − conj(P_F) + P_G` (at `|ζ| = 1`), and on the top
/// wall additionally the known part of the `i log|ζ|²·W` term,
/// `K_T = m_w log|ζ−ζ₀|² − log ρ²·ζ·(m_F/(ζ−ζ₀) + P_F′) − conj(P_F) + P_G`
/// (at `|ζ| = ρ`). The Fourier coefficients of `−K_B` are the `d_n`, those
/// of `−K_T` the `e_n`; this routine samples the wall data and compares DFT
/// sums (compensated accumulation) against the closed forms.
pub fn forcing_dft_crosscheck<T: Real>(
    solution: &ChannelSolution<T>,
    n_check: usize,
    m_samples: usize,
    tolerance: T,
) -> ValidationReport<T> {
    let n_check = n_check.min(solution.n_terms);
    let parts = &solution.parts;
    let spec = &solution.spec;
    let h = solution.geom.canonical_h;
    let l_cap = -(h + h);
    let two_pi = T::PI() + T::PI();
    let mf = r::<T>(m_samples as f64);

    // Wall samples of the known data.
    let mut kb = Vec::with_capacity(m_samples);
    let mut kt = Vec::with_capacity(m_samples);
    for j in 0..m_samples {
        let th = two_pi * r::<T>(j as f64) / mf;
        // Bottom wall: z = θ, ζ = e^{iθ}.
        let db = zeta_diff(C::new(th, T::zero()), spec.z0, spec.zeta0);
        let kb_j = parts.m_w * db.norm_sqr().ln() - pole_sum(&parts.pf, db).conj()
            + pole_sum(&parts.pg, db);
        kb.push(kb_j);
        // Top wall: z = θ + ih, ζ = ρ e^{iθ}.
        let zt = C::new(th, h);
        let zeta_t = crate::model::zeta_of_z(zt);
        let dt = zeta_diff(zt, spec.z0, spec.zeta0);
        let kt_j = parts.m_w * dt.norm_sqr().ln()
            - zeta_t * (parts.m_f / dt + pole_sum_prime(&parts.pf, dt)) * l_cap
            - pole_sum(&parts.pf, dt).conj()
            + pole_sum(&parts.pg, dt);
        kt.push(kt_j);
    }

    let dft = |data: &[C<T>], n: i64| -> C<T> {
        let mut acc = Kahan::new();
        for (j, &v) in data.iter().enumerate() {
            let th = two_pi * r::<T>(j as f64) / mf;
            let ph = -r::<T>(n as f64) * th;
            acc.add(v * C::new(ph.cos(), ph.sin()));
        }
        -acc.s / mf
    };

    let mut worst = T::zero();
    let mut count = 0usize;
    // Constant modes.
    worst = worst.max((dft(&kb, 0) - solution.forcing.d0).norm());
    worst = worst.max((dft(&kt, 0) - solution.forcing.e0).norm());
    count += 2;
    for n in 1..=n_check {
        let idx = n - 1;
        worst = worst.max((dft(&kb, n as i64) - solution.forcing.dp[idx]).norm());
        worst = worst.max((dft(&kb, -(n as i64)) - solution.forcing.dm[idx]).norm());
        worst = worst.max((dft(&kt, n as i64) - solution.forcing.ep[idx]).norm());
        worst = worst.max((dft(&kt, -(n as i64)) - solution.forcing.em[idx]).norm());
        count += 4;
    }
    ValidationReport::new("forcing_dft_crosscheck", worst, count, tolerance)
}

/// Combined boundary-evaluated decay terms `(|F_n ζⁿ + H_n(ρ/ζ)ⁿ|,
/// |G_n ζⁿ + K_n(ρ/ζ)ⁿ|)` at a probe `ζ`, for `n = 1..=N`.
pub fn decay_terms<T: Real>(solution: &ChannelSolution<T>, zeta: C<T>) -> Vec<(T, T)> {
    let rho = solution.geom.rho;
    let rz = re_c::<T>(rho) / zeta;
    let mut zp = zeta;
    let mut wp = rz;
    let mut out = Vec::with_capacity(solution.n_terms);
    for idx in 0..solution.n_terms {
        let tf = (solution.coeffs.f_n[idx] * zp + solution.coeffs.h_n[idx] * wp).norm();
        let tg = (solution.coeffs.g_n[idx] * zp + solution.coeffs.k_n[idx] * wp).norm();
        out.push((tf, tg));
        zp = zp * zeta;
        wp = wp * rz;
    }
    out
}

/// Fitted log-linear slope of a decay-term sequence over `n ≤ n_fit`.
pub fn decay_slope<T: Real>(terms: &[T], n_fit: usize) -> T {
    let m = n_fit.min(terms.len());
    let xs: Vec<T> = (1..=m).map(|n| r(n as f64)).collect();
    let ys: Vec<T> = terms[..m]
        .iter()
        .map(|t| t.max(r(1e-300)).ln())
        .collect();
    fit_slope(&xs, &ys)
}

/// Max-abs velocity difference between a scene and an independent oracle
/// field at the given points (absolute scale).
pub fn cross_method_compare<T: Real>(
    scene: &Scene<T>,
    oracle: impl Fn(C<T>) -> C<T>,
    points: &[C<T>],
    tolerance: T,
) -> ValidationReport<T> {
    let mut worst = T::zero();
    for &z in points {
        let d = (scene.velocity_unchecked(z) - oracle(z)).norm();
        worst = worst.max(d);
    }
    ValidationReport::new("cross_method_compare", worst, points.len(), tolerance)
}

/// Standard verification battery for a scene: no-slip, periodicity (velocity
/// and pressure), PDE residuals, vorticity consistency, local forms, and the
/// forcing DFT cross-check per channel solution.
///
/// Seeds and tolerances are fixed here so `verify` runs are deterministic.
pub fn standard_battery<T: Real>(scene: &Scene<T>) -> Vec<ValidationReport<T>> {
    let mut out = Vec::new();
    let is_channel = matches!(scene.geometry, DomainGeometry::Channel(_));
    let h = scene
        .geometry
        .canonical_height()
        .unwrap_or_else(|| r(3.0));
    let margin = r::<T>(0.05) * h.min(T::one()).max(r(0.2));
    let y_lo = margin;
    let y_hi = h - margin;
    let noslip_tol = if is_channel { r(1e-11) } else { r(1e-13) };
    out.push(noslip_residual(scene, 256, noslip_tol));
    // Keep a unit-ish standoff from the poles: the periodicity identity is
    // exact, so the measured residual is pure roundoff amplified by the
    // local field gradient.
    let excl = T::one().min(h * r(0.45));
    out.push(periodicity_residual(scene, 200, 42, y_lo, y_hi, excl, r(1e-14)));
    out.push(pressure_periodicity_residual(
        scene,
        200,
        42,
        y_lo,
        y_hi,
        excl,
        r(1e-13),
    ));
    let excl_fd = r::<T>(0.6).min(h * r(0.2));
    out.push(incompressibility_residual(
        scene,
        100,
        7,
        y_lo,
        y_hi,
        excl_fd,
        r(1e-5),
        r(1e-6),
    ));
    out.push(momentum_residual(
        scene,
        100,
        7,
        y_lo,
        y_hi,
        excl_fd,
        r(1e-4),
        r(1e-4),
    ));
    out.push(vorticity_consistency(
        scene,
        100,
        7,
        y_lo,
        y_hi,
        excl_fd,
        r(1e-5),
        r(1e-6),
    ));
    for sol in &scene.solutions {
        if !sol.spec().kind.is_zero() {
            out.push(local_singularity_residual(
                sol,
                &default_local_radii(),
                8,
                r(0.05),
            ));
        }
        if let Solution::Channel(cs) = sol {
            out.push(forcing_dft_crosscheck(cs, 40, 4096, r(1e-12)));
        }
    }
    out
}

/// Renders a battery as aligned text lines (`PASS`/`FAIL`, residual,
/// tolerance, sample count).
pub fn render_reports<T: Real>(reports: &[ValidationReport<T>]) -> String {
    let mut s = String::new();
    for rep in reports {
        s.push_str(&format!(
            "{:<40} {}  residual {:.3e}  tol {:.3e}  samples {}\n",
            rep.name,
            if rep.pass { "PASS" } else { "FAIL" },
            as_f64(rep.max_residual),
            as_f64(rep.tolerance),
            rep.samples
        ));
    }
    s
}

/// Convenience: the four frozen far-field points used by the derivative
/// identity checks (all at distance ≥ 1 from `z₀ = π + 0.9i` and its
/// periodic images).
pub fn derivative_check_points<T: Real>() -> Vec<C<T>> {
    vec![
        cx(std::f64::consts::FRAC_PI_2, 0.7),
        cx(1.5, 0.3),
        cx(4.9, 0.3),
        cx(5.5, 1.5),
    ]
}
