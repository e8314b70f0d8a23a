//! Closed-form series solution for one periodic singularity row in a
//! no-slip channel.
//!
//! Representation on the annulus `ρ < |ζ| < 1`, `ζ = e^{iz}`, `ρ = e^{−h}`:
//!
//! ```text
//! F(ζ) = a log ζ + m_F log(ζ−ζ₀) + P_F(ζ) + F̂(ζ)
//! G(ζ) = −a log ζ + m_G log(ζ−ζ₀) + P_G(ζ) + i log ζ · W(ζ) + Ĝ(ζ)
//! W(ζ) = i ζ F′(ζ)                        (equals f′(z); p/η − iω = 4W)
//! u − iv = −a log|ζ|² + m_w log|ζ−ζ₀|² + i log|ζ|² · W + R
//!     R = −conj(P_F + F̂) + P_G + Ĝ,      m_w = −conj(m_F)
//! F̂(ζ) = Σ F_n ζⁿ + Σ H_n (ρ/ζ)ⁿ
//! Ĝ(ζ) = G₀ + Σ G_n ζⁿ + Σ K_n (ρ/ζ)ⁿ
//! ```
//!
//! `P_F`, `P_G` collect the pole terms at `ζ₀` (stored as `(k, c)` meaning
//! `c/(ζ−ζ₀)^k`). The no-slip conditions on `|ζ| = 1` and `|ζ| = ρ` reduce,
//! Fourier mode by Fourier mode, to a 4×4 linear relation per harmonic `n`
//! between `(F_n, G_n, H_n, K_n)` and forcing data `(d_n^±, e_n^±)` read off
//! the singular parts; that relation is solved here in closed form.

use crate::error::{Error, Result};
use num_traits::Zero;
use crate::model::{
    zeta_diff, ChannelGeometry, SingularityKind, SingularitySpec,
};
use crate::scalar::{r, re_c, Real, C};

/// Hard cap on the number of retained harmonics.
pub const MAX_TERMS: usize = 4096;

/// Singular (non-series) part of the Goursat pair: log strengths and pole
/// clusters at `ζ₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularParts<T: Real> {
    /// Strength of `log(ζ−ζ₀)` in `F`.
    pub m_f: C<T>,
    /// Strength of `log(ζ−ζ₀)` in `G`.
    pub m_g: C<T>,
    /// Strength of `log|ζ−ζ₀|²` in `u − iv`; equals `−conj(m_f)`.
    pub m_w: C<T>,
    /// Pole cluster of `F` at `ζ₀`: `(k, c)` meaning `c/(ζ−ζ₀)^k`.
    pub pf: Vec<(u32, C<T>)>,
    /// Pole cluster of `G` at `ζ₀`.
    pub pg: Vec<(u32, C<T>)>,
}

/// Wall-forcing Fourier data extracted from the singular parts.
///
/// `dp[n−1] = d_n⁺`, `dm[n−1] = d_n⁻` (bottom wall, positive/negative
/// harmonics), `ep`/`em` likewise for the top wall; `d0`/`e0` are the
/// constant modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingCoefficients<T: Real> {
    /// Constant mode of the bottom-wall forcing.
    pub d0: C<T>,
    /// Constant mode of the top-wall forcing.
    pub e0: C<T>,
    /// `d_n⁺` for `n = 1..=N`.
    pub dp: Vec<C<T>>,
    /// `d_n⁻` for `n = 1..=N`.
    pub dm: Vec<C<T>>,
    /// `e_n⁺` for `n = 1..=N`.
    pub ep: Vec<C<T>>,
    /// `e_n⁻` for `n = 1..=N`.
    pub em: Vec<C<T>>,
}

/// Evaluated Goursat data at a point, with the multivalued pieces kept
/// symbolic so callers can reassemble fields or track branch winding.
///
/// `f = a log ζ + m_f log(ζ−ζ₀) + f_sv` and
/// `g′ = −a log ζ + m_g log(ζ−ζ₀) + i log ζ · w_deriv + g_sv`
/// (half-plane solutions use the same shape with `a = 0` and the image-log
/// pair folded into `f_sv`/`g_sv` bookkeeping of the respective module).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoursatParts<T: Real> {
    /// Single-valued part of `f` (poles + regular series).
    pub f_sv: C<T>,
    /// Single-valued part of `g′`, excluding the `i log ζ · W` term.
    pub g_sv: C<T>,
    /// `W = f′(z)`; `p/η − iω = 4W`.
    pub w_deriv: C<T>,
    /// `ζ = e^{iz}` at the evaluation point.
    pub zeta: C<T>,
}

/// Builds the singular parts of the Goursat pair for one singularity in the
/// annulus frame.
pub fn singular_parts<T: Real>(spec: &SingularitySpec<T>) -> SingularParts<T> {
    let mu = spec.kind.strength();
    let mub = mu.conj();
    let zeta0 = spec.zeta0;
    let jj = crate::scalar::i::<T>();
    let two = r::<T>(2.0);
    // log|ζ₀|² = −2·Im z₀ exactly under ζ₀ = e^{iz₀}.
    let x = -(spec.z0.im + spec.z0.im);
    let y_cap = spec.z0.im;
    let (m_f, pf, pg): (C<T>, Vec<(u32, C<T>)>, Vec<(u32, C<T>)>) = match spec.kind {
        SingularityKind::Stokeslet(_) => (
            mu,
            vec![],
            vec![(1, mu * zeta0 * x)],
        ),
        SingularityKind::Stresslet(_) => {
            let chi = jj * mu * zeta0 * (two * y_cap - T::one());
            let nu = jj * two * mu * zeta0 * zeta0 * y_cap;
            (
                C::<T>::zero(),
                vec![(1, jj * mu * zeta0)],
                vec![(1, chi), (2, nu)],
            )
        }
        SingularityKind::ForceQuadrupole(_) => {
            let z2 = zeta0 * zeta0;
            (
                C::<T>::zero(),
                vec![(1, -mu * zeta0), (2, -mu * z2)],
                vec![
                    (1, mu * zeta0 * two * (T::one() - y_cap)),
                    (2, mu * z2 * two * (T::one() - r::<T>(3.0) * y_cap)),
                    (3, -mu * z2 * zeta0 * r::<T>(4.0) * y_cap),
                ],
            )
        }
        SingularityKind::SourceDipole(_) => (
            C::<T>::zero(),
            vec![],
            vec![(1, mu * zeta0), (2, mu * zeta0 * zeta0)],
        ),
        SingularityKind::SourceQuadrupole(_) => {
            let z2 = zeta0 * zeta0;
            (
                C::<T>::zero(),
                vec![],
                vec![
                    (1, jj * mu * zeta0),
                    (2, jj * r::<T>(3.0) * mu * z2),
                    (3, jj * two * mu * z2 * zeta0),
                ],
            )
        }
    };
    let m_g = match spec.kind {
        SingularityKind::Stokeslet(_) => -mub,
        _ => C::<T>::zero(),
    };
    SingularParts {
        m_f,
        m_g,
        m_w: -m_f.conj(),
        pf,
        pg,
    }
}

/// Extracts the wall-forcing Fourier coefficients for harmonics `1..=n_max`.
pub fn forcing_coefficients<T: Real>(
    spec: &SingularitySpec<T>,
    geom: &ChannelGeometry<T>,
    n_max: usize,
) -> ForcingCoefficients<T> {
    let mu = spec.kind.strength();
    let mub = mu.conj();
    let zeta0 = spec.zeta0;
    let z0b = zeta0.conj();
    let rho = geom.rho;
    let h = geom.canonical_h;
    let jj = crate::scalar::i::<T>();
    let two = r::<T>(2.0);
    let x = -(spec.z0.im + spec.z0.im); // log|ζ₀|²
    let y_cap = spec.z0.im;
    let l_cap = -(h + h); // log ρ²

    let (d0, e0): (C<T>, C<T>) = match spec.kind {
        SingularityKind::Stokeslet(_) => (C::<T>::zero(), re_c(two * mu.re * x)),
        SingularityKind::Stresslet(_) => (C::<T>::zero(), re_c(two * mu.im)),
        _ => (C::<T>::zero(), C::<T>::zero()),
    };

    let mut dp = Vec::with_capacity(n_max);
    let mut dm = Vec::with_capacity(n_max);
    let mut ep = Vec::with_capacity(n_max);
    let mut em = Vec::with_capacity(n_max);

    // Running powers; each ratio has modulus < 1 inside the channel.
    let rz = re_c::<T>(rho) / zeta0; // (ρ/ζ₀)
    let rzb = re_c::<T>(rho) / z0b; // (ρ/conj(ζ₀))
    let mut zp = zeta0; // ζ₀ⁿ
    let mut zbp = z0b; // conj(ζ₀)ⁿ
    let mut rzp = rz; // (ρ/ζ₀)ⁿ
    let mut rzbp = rzb; // (ρ/conj(ζ₀))ⁿ

    for n in 1..=n_max {
        let nf = r::<T>(n as f64);
        match spec.kind {
            SingularityKind::Stokeslet(_) => {
                dp.push(-mub * zbp / nf);
                dm.push(-zp * (mub / nf + mu * x));
                ep.push(rzp * (mu * (x - l_cap) - mub / nf));
                em.push(-mub * rzbp / nf);
            }
            SingularityKind::Stresslet(_) => {
                dp.push(-jj * mub * zbp);
                dm.push(jj * mu * zp * (T::one() - two * nf * y_cap));
                ep.push(-jj * mu * rzp * (T::one() + nf * (two * y_cap + l_cap)));
                em.push(jj * mub * rzbp);
            }
            SingularityKind::ForceQuadrupole(_) => {
                dp.push(-mub * zbp * nf);
                dm.push(mu * zp * two * nf * (nf * y_cap - T::one()));
                ep.push(-mu * rzp * nf * (two + nf * (two * y_cap + l_cap)));
                em.push(-mub * rzbp * nf);
            }
            SingularityKind::SourceDipole(_) => {
                dp.push(C::<T>::zero());
                dm.push(-mu * zp * nf);
                ep.push(-mu * rzp * nf);
                em.push(C::<T>::zero());
            }
            SingularityKind::SourceQuadrupole(_) => {
                dp.push(C::<T>::zero());
                dm.push(-jj * mu * zp * (nf * nf));
                ep.push(jj * mu * rzp * (nf * nf));
                em.push(C::<T>::zero());
            }
        }
        zp = zp * zeta0;
        zbp = zbp * z0b;
        rzp = rzp * rz;
        rzbp = rzbp * rzb;
    }

    ForcingCoefficients {
        d0,
        e0,
        dp,
        dm,
        ep,
        em,
    }
}

/// `(1 − ρ^{2n})² − (n·log ρ²)²·ρ^{2n}` evaluated without cancellation.
///
/// With `s = nh` this is `4e^{−2s}(sinh s − s)(sinh s + s)`; the factored
/// form (with a series for `sinh s − s` at small `s`) is used below the
/// overflow threshold, the plain form above it where the subtraction is
/// harmless anyway.  The factored form makes positivity for `s > 0`
/// manifest: both parenthesised factors are strictly positive.
pub fn denom_d<T: Real>(s: T) -> T {
    let four = r::<T>(4.0);
    if s < r(40.0) {
        let sh = s.sinh();
        let shm = if s < r(0.5) {
            // sinh s − s = Σ_{k≥1} s^{2k+1}/(2k+1)!
            let s2 = s * s;
            let mut term = s2 * s / r(6.0);
            let mut acc = term;
            let mut k = 1.0;
            loop {
                term = term * s2 / r((2.0 * k + 2.0) * (2.0 * k + 3.0));
                let next = acc + term;
                if next == acc {
                    break;
                }
                acc = next;
                k += 1.0;
            }
            acc
        } else {
            sh - s
        };
        four * (-(s + s)).exp() * shm * (sh + s)
    } else {
        let r2n = (-(s + s)).exp();
        let one_m = T::one() - r2n;
        one_m * one_m - four * s * s * r2n
    }
}

/// Solved series coefficients together with the constant mode.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients<T: Real> {
    /// Strength of the `a log ζ` pressure-carrying mode (real).
    pub a: T,
    /// Constant term `G₀` of `Ĝ`.
    pub g0: C<T>,
    /// `F_n` for `n = 1..=N` (positive harmonics of `F̂`).
    pub f_n: Vec<C<T>>,
    /// `G_n` for `n = 1..=N`.
    pub g_n: Vec<C<T>>,
    /// `H_n` for `n = 1..=N` (negative harmonics, `(ρ/ζ)ⁿ` basis).
    pub h_n: Vec<C<T>>,
    /// `K_n` for `n = 1..=N`.
    pub k_n: Vec<C<T>>,
}

/// Solves the per-harmonic 4×4 relations in closed form.
///
/// The back-substitution order is chosen so no intermediate carries a
/// `ρ^{−n}` amplification; every stored coefficient stays `O(1)` relative to
/// the forcing it balances.
pub fn solve_coefficients<T: Real>(
    forcing: &ForcingCoefficients<T>,
    geom: &ChannelGeometry<T>,
) -> SeriesCoefficients<T> {
    let rho = geom.rho;
    let h = geom.canonical_h;
    let l_cap = -(h + h); // log ρ²
    let n_max = forcing.dp.len();
    // a from the constant (n = 0) condition; the data make it real.
    let a = (forcing.d0 - forcing.e0).re / (r::<T>(4.0) * -h);
    let g0 = forcing.d0;

    let mut f_n = Vec::with_capacity(n_max);
    let mut g_n = Vec::with_capacity(n_max);
    let mut h_n = Vec::with_capacity(n_max);
    let mut k_n = Vec::with_capacity(n_max);

    let mut rn = T::one();
    for n in 1..=n_max {
        rn = rn * rho; // ρⁿ
        let idx = n - 1;
        let nf = r::<T>(n as f64);
        let s = nf * h;
        let r2n = rn * rn;
        let one_m_r2n = -(-(s + s)).exp_m1(); // 1 − ρ^{2n}, cancellation-free
        let d_den = denom_d(s);
        let nl = nf * l_cap;
        let dp = forcing.dp[idx];
        let dm = forcing.dm[idx];
        let ep = forcing.ep[idx];
        let em = forcing.em[idx];
        let f = (ep * (rn * nl) + em.conj() * (rn * one_m_r2n)
            - dp * (r2n * nl)
            - dm.conj() * one_m_r2n)
            / d_den;
        let g = (-f * (r2n * nl) - ep * rn + dp) / one_m_r2n;
        let hh = (dp.conj() * rn - ep.conj() - f.conj() * (rn * nl)) / one_m_r2n;
        let kk = em + f.conj() * rn - hh * nl;
        f_n.push(f);
        g_n.push(g);
        h_n.push(hh);
        k_n.push(kk);
    }

    SeriesCoefficients {
        a,
        g0,
        f_n,
        g_n,
        h_n,
        k_n,
    }
}

/// Maximum relative residual of the four per-harmonic coupling relations.
///
/// Each row is scaled by the largest single term entering it (not by the
/// possibly cancelling sum), so the figure reports genuine loss of
/// significance rather than benign cancellation.
pub fn system_residual<T: Real>(
    coeffs: &SeriesCoefficients<T>,
    forcing: &ForcingCoefficients<T>,
    geom: &ChannelGeometry<T>,
) -> T {
    let rho = geom.rho;
    let h = geom.canonical_h;
    let l_cap = -(h + h);
    let tiny = r::<T>(1.0e-300);
    let mut worst = T::zero();
    let mut rn = T::one();
    for n in 1..=coeffs.f_n.len() {
        rn = rn * rho;
        let idx = n - 1;
        let nf = r::<T>(n as f64);
        let nl = nf * l_cap;
        let f = coeffs.f_n[idx];
        let g = coeffs.g_n[idx];
        let hh = coeffs.h_n[idx];
        let kk = coeffs.k_n[idx];
        let rows: [(&[C<T>], C<T>); 4] = [
            (&[-hh.conj() * rn, g], forcing.dp[idx]),
            (&[-f.conj(), kk * rn], forcing.dm[idx]),
            (&[-hh.conj(), g * rn, -f * (rn * nl)], forcing.ep[idx]),
            (&[-f.conj() * rn, kk, hh * nl], forcing.em[idx]),
        ];
        for (terms, rhs) in rows {
            let mut lhs = C::<T>::zero();
            let mut scale = rhs.norm().max(tiny);
            for t in terms {
                lhs = lhs + *t;
                scale = scale.max(t.norm());
            }
            worst = worst.max((lhs - rhs).norm() / scale);
        }
    }
    worst
}

/// The assembled channel solution for a single periodic singularity row.
#[derive(Debug, Clone)]
pub struct ChannelSolution<T: Real> {
    /// Canonical geometry (period 2π).
    pub geom: ChannelGeometry<T>,
    /// The singularity (canonical coordinates).
    pub spec: SingularitySpec<T>,
    /// Singular parts of the Goursat pair.
    pub parts: SingularParts<T>,
    /// Wall-forcing data for the retained harmonics.
    pub forcing: ForcingCoefficients<T>,
    /// Solved series coefficients.
    pub coeffs: SeriesCoefficients<T>,
    /// Number of retained harmonics.
    pub n_terms: usize,
    /// Verified relative residual of the coefficient relations.
    pub residual: T,
    /// Tolerance the truncation was sized for.
    pub tolerance: T,
}

/// Truncation order sized so the neglected tail is below `tol`.
///
/// Coefficients grow at most like `n²(1 + 2h)` against a geometric decay
/// `qⁿ`, `q = max(|ζ₀|, ρ/|ζ₀|)`; the envelope is cheap and safe for every
/// kind.
pub fn choose_truncation<T: Real>(
    spec: &SingularitySpec<T>,
    geom: &ChannelGeometry<T>,
    tol: T,
) -> usize {
    let az = spec.zeta0.norm();
    let q = az.max(geom.rho / az);
    let mu_n = spec.kind.strength().norm();
    let c_env = mu_n.max(T::one()) * (T::one() + geom.canonical_h + geom.canonical_h);
    let mut n = 8usize;
    let lq = q.ln(); // negative inside the clearance margin
    while n < MAX_TERMS {
        let nf = r::<T>(n as f64);
        let bound = c_env * nf * nf * (nf * lq).exp();
        if bound <= tol {
            break;
        }
        n += 1;
    }
    n
}

impl<T: Real> ChannelSolution<T> {
    /// Builds the solution, verifying the solved coefficients against the
    /// coupling relations and enlarging the truncation if needed.
    pub fn build(
        kind: SingularityKind<T>,
        z0: C<T>,
        geom: &ChannelGeometry<T>,
        tolerance: T,
    ) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > T::zero()) {
            return Err(Error::Contract(format!(
                "tolerance must be a positive finite number (got {tolerance})"
            )));
        }
        let canonical = ChannelGeometry::canonical(geom.canonical_h)?;
        let spec = SingularitySpec::channel(kind, z0, &canonical)?;
        let mut n = choose_truncation(&spec, &canonical, tolerance);
        let allowed = r::<T>(10.0) * tolerance;
        loop {
            let parts = singular_parts(&spec);
            let forcing = forcing_coefficients(&spec, &canonical, n);
            let coeffs = solve_coefficients(&forcing, &canonical);
            let residual = system_residual(&coeffs, &forcing, &canonical);
            if residual.is_finite() && residual <= allowed {
                return Ok(Self {
                    geom: canonical,
                    spec,
                    parts,
                    forcing,
                    coeffs,
                    n_terms: n,
                    residual,
                    tolerance,
                });
            }
            if n >= MAX_TERMS {
                return Err(Error::AccuracyNotMet {
                    achieved: crate::scalar::as_f64(residual),
                    allowed: crate::scalar::as_f64(allowed),
                    n,
                });
            }
            n = (n * 2).min(MAX_TERMS);
        }
    }

    /// Builds with a caller-fixed number of harmonics instead of the sized
    /// truncation; the residual check still applies.
    pub fn build_with_terms(
        kind: SingularityKind<T>,
        z0: C<T>,
        geom: &ChannelGeometry<T>,
        tolerance: T,
        n_terms: usize,
    ) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance > T::zero()) {
            return Err(Error::Contract(format!(
                "tolerance must be a positive finite number (got {tolerance})"
            )));
        }
        if n_terms == 0 || n_terms > MAX_TERMS {
            return Err(Error::Contract(format!(
                "n_terms must lie in 1..={MAX_TERMS} (got {n_terms})"
            )));
        }
        let canonical = ChannelGeometry::canonical(geom.canonical_h)?;
        let spec = SingularitySpec::channel(kind, z0, &canonical)?;
        let parts = singular_parts(&spec);
        let forcing = forcing_coefficients(&spec, &canonical, n_terms);
        let coeffs = solve_coefficients(&forcing, &canonical);
        let residual = system_residual(&coeffs, &forcing, &canonical);
        if !(residual.is_finite() && residual <= r::<T>(10.0) * tolerance) {
            return Err(Error::AccuracyNotMet {
                achieved: crate::scalar::as_f64(residual),
                allowed: crate::scalar::as_f64(r::<T>(10.0) * tolerance),
                n: n_terms,
            });
        }
        Ok(Self {
            geom: canonical,
            spec,
            parts,
            forcing,
            coeffs,
            n_terms,
            residual,
            tolerance,
        })
    }

    /// `ζ − ζ₀` via the period-reduced, cancellation-free product form.
    #[inline]
    pub fn zdiff(&self, z: C<T>) -> C<T> {
        zeta_diff(z, self.spec.z0, self.spec.zeta0)
    }

    /// `(F̂, Ĝ, F̂′)` at `ζ` in one fused pass over the harmonics.
    fn series_sums(&self, zeta: C<T>) -> (C<T>, C<T>, C<T>) {
        let rz = re_c::<T>(self.geom.rho) / zeta;
        let mut zp = zeta; // ζⁿ
        let mut wp = rz; // (ρ/ζ)ⁿ
        let mut fhat = C::<T>::zero();
        let mut ghat = self.coeffs.g0;
        let mut s1 = C::<T>::zero(); // Σ n F_n ζⁿ
        let mut s2 = C::<T>::zero(); // Σ n H_n (ρ/ζ)ⁿ
        for idx in 0..self.n_terms {
            let nf = r::<T>((idx + 1) as f64);
            let f = self.coeffs.f_n[idx];
            let hh = self.coeffs.h_n[idx];
            fhat = fhat + f * zp + hh * wp;
            ghat = ghat + self.coeffs.g_n[idx] * zp + self.coeffs.k_n[idx] * wp;
            s1 = s1 + f * zp * nf;
            s2 = s2 + hh * wp * nf;
            zp = zp * zeta;
            wp = wp * rz;
        }
        let fhat_prime = (s1 - s2) / zeta;
        (fhat, ghat, fhat_prime)
    }

    fn poles(&self, cluster: &[(u32, C<T>)], d: C<T>) -> C<T> {
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

    fn poles_prime(&self, cluster: &[(u32, C<T>)], d: C<T>) -> C<T> {
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

    /// `W = f′(z)`; `p/η − iω = 4W`.
    pub fn w_deriv(&self, z: C<T>) -> C<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        let (_, _, fhat_prime) = self.series_sums(zeta);
        let s = re_c(self.coeffs.a) / zeta
            + self.parts.m_f / d
            + self.poles_prime(&self.parts.pf, d)
            + fhat_prime;
        crate::scalar::i::<T>() * zeta * s
    }

    /// Complex velocity `u − iv` at `z` (canonical frame).
    ///
    /// Returns non-finite values exactly at the singularity and its periodic
    /// images; distance-guarding is the caller's concern.
    pub fn velocity(&self, z: C<T>) -> C<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        let la2 = -(z.im + z.im); // log|ζ|², exact under ζ = e^{iz}
        let (fhat, ghat, fhat_prime) = self.series_sums(zeta);
        let w_cap = crate::scalar::i::<T>()
            * zeta
            * (re_c(self.coeffs.a) / zeta
                + self.parts.m_f / d
                + self.poles_prime(&self.parts.pf, d)
                + fhat_prime);
        let mut val = re_c(-self.coeffs.a * la2) + self.parts.m_w * d.norm_sqr().ln();
        val = val + crate::scalar::i::<T>() * la2 * w_cap;
        val = val - (self.poles(&self.parts.pf, d) + fhat).conj()
            + self.poles(&self.parts.pg, d)
            + ghat;
        val
    }

    /// `p/η − iω = 4 f′(z)`.
    pub fn four_f_prime(&self, z: C<T>) -> C<T> {
        let four = r::<T>(4.0);
        self.w_deriv(z) * four
    }

    /// Goursat data at `z` with the multivalued pieces kept symbolic.
    pub fn goursat(&self, z: C<T>) -> GoursatParts<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        let (fhat, ghat, fhat_prime) = self.series_sums(zeta);
        let w_deriv = crate::scalar::i::<T>()
            * zeta
            * (re_c(self.coeffs.a) / zeta
                + self.parts.m_f / d
                + self.poles_prime(&self.parts.pf, d)
                + fhat_prime);
        GoursatParts {
            f_sv: self.poles(&self.parts.pf, d) + fhat,
            g_sv: self.poles(&self.parts.pg, d) + ghat,
            w_deriv,
            zeta,
        }
    }
}
