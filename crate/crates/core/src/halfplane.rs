//! Closed-form solution for one periodic singularity row above a single
//! no-slip wall (half-plane, `Im z > 0`).
//!
//! This is the `h → ∞` limit of the channel: the annulus degenerates to the
//! punctured unit disc and the series collapses to finitely many image
//! terms. In the disc frame the Goursat pair is, with `ζ = e^{iz}`,
//! `ζ₀ = e^{iz₀}`, `b = conj(ζ₀)`:
//!
//! ```text
//! F(ζ) = m_F log(ζ−ζ₀) − m_F log(1 − bζ) + P_F(ζ) + Q_F(ζ) + c_F
//! G(ζ) = m_G log(ζ−ζ₀) + i log ζ · W(ζ) + P_G(ζ) + Q_G(ζ) + c_G,
//!        m_G = −conj(m_F)
//! ```
//!
//! `P` clusters are poles at `ζ₀` (`(k, c)` meaning `c/(ζ−ζ₀)^k`), `Q`
//! clusters are poles at the image point `1/b` (`(k, c)` meaning
//! `c/(1 − bζ)^k`); both vanish or stay bounded on the wall `|ζ| = 1`
//! together with the log pair, which is what enforces no-slip.

use crate::error::Result;
use num_traits::{One, Zero};
use crate::model::{zeta_diff, HalfPlaneGeometry, SingularityKind, SingularitySpec};
use crate::scalar::{r, Real, C};

use crate::channel_series::GoursatParts;

/// Assembled half-plane solution (exact; no truncation parameter).
#[derive(Debug, Clone)]
pub struct HalfPlaneSolution<T: Real> {
    /// Canonical geometry (period 2π).
    pub geom: HalfPlaneGeometry<T>,
    /// The singularity (canonical coordinates).
    pub spec: SingularitySpec<T>,
    /// Strength of `log(ζ−ζ₀)` in `F` (the image log carries `−m_f`).
    pub m_f: C<T>,
    /// Strength of `log(ζ−ζ₀)` in `G`; equals `−conj(m_f)`.
    pub m_g: C<T>,
    /// Strength of `log|ζ−ζ₀|²` in `u − iv`; equals `−conj(m_f)`.
    pub m_w: C<T>,
    /// Poles of `F` at `ζ₀`.
    pub pf: Vec<(u32, C<T>)>,
    /// Image poles of `F`: `(k, c)` meaning `c/(1 − conj(ζ₀)ζ)^k`.
    pub qf: Vec<(u32, C<T>)>,
    /// Additive constant in `F`.
    pub c_f: C<T>,
    /// Poles of `G` at `ζ₀`.
    pub pg: Vec<(u32, C<T>)>,
    /// Image poles of `G`.
    pub qg: Vec<(u32, C<T>)>,
    /// Additive constant in `G`.
    pub c_g: C<T>,
}

impl<T: Real> HalfPlaneSolution<T> {
    /// Builds the exact solution for a validated half-plane singularity.
    pub fn build(kind: SingularityKind<T>, z0: C<T>) -> Result<Self> {
        let spec = SingularitySpec::halfplane(kind, z0)?;
        let mu = kind.strength();
        let mub = mu.conj();
        let zeta0 = spec.zeta0;
        let jj = crate::scalar::i::<T>();
        let two = r::<T>(2.0);
        let three = r::<T>(3.0);
        let y_cap = spec.z0.im; // = −½ log|ζ₀|²
        let x = -(y_cap + y_cap);

        let zero = C::<T>::zero();
        let (m_f, pf, qf, c_f, pg, qg, c_g): (
            C<T>,
            Vec<(u32, C<T>)>,
            Vec<(u32, C<T>)>,
            C<T>,
            Vec<(u32, C<T>)>,
            Vec<(u32, C<T>)>,
            C<T>,
        ) = match kind {
            SingularityKind::Stokeslet(_) => {
                let kap = mub * x;
                (
                    mu,
                    vec![],
                    vec![(1, kap)],
                    -kap,
                    vec![(1, kap.conj() * zeta0)],
                    vec![],
                    zero,
                )
            }
            SingularityKind::Stresslet(_) => {
                let chi = jj * mu * zeta0 * (two * y_cap - T::one());
                let nu = jj * two * mu * zeta0 * zeta0 * y_cap;
                (
                    zero,
                    vec![(1, jj * mu * zeta0)],
                    vec![
                        (1, jj * mub * (two * y_cap + T::one())),
                        (2, -jj * two * mub * y_cap),
                    ],
                    -jj * mub,
                    vec![(1, chi), (2, nu)],
                    vec![(1, -jj * mub)],
                    jj * mub,
                )
            }
            SingularityKind::ForceQuadrupole(_) => {
                let z2 = zeta0 * zeta0;
                (
                    zero,
                    vec![(1, -mu * zeta0), (2, -mu * z2)],
                    vec![
                        (1, -(mub * (two * (T::one() + y_cap)))),
                        (2, mub * (two * (T::one() + three * y_cap))),
                        (3, -(mub * (r::<T>(4.0) * y_cap))),
                    ],
                    zero,
                    vec![
                        (1, mu * zeta0 * (two * (T::one() - y_cap))),
                        (2, mu * z2 * (two * (T::one() - three * y_cap))),
                        (3, -(mu * z2 * zeta0 * (r::<T>(4.0) * y_cap))),
                    ],
                    vec![(1, mub), (2, -mub)],
                    zero,
                )
            }
            SingularityKind::SourceDipole(_) => (
                zero,
                vec![],
                vec![(1, -mub), (2, mub)],
                zero,
                vec![(1, mu * zeta0), (2, mu * zeta0 * zeta0)],
                vec![],
                zero,
            ),
            SingularityKind::SourceQuadrupole(_) => {
                let z2 = zeta0 * zeta0;
                (
                    zero,
                    vec![],
                    vec![(1, -jj * mub), (2, jj * three * mub), (3, -jj * two * mub)],
                    zero,
                    vec![
                        (1, jj * mu * zeta0),
                        (2, jj * three * mu * z2),
                        (3, jj * two * mu * z2 * zeta0),
                    ],
                    vec![],
                    zero,
                )
            }
        };

        Ok(Self {
            geom: HalfPlaneGeometry::canonical(),
            spec,
            m_f,
            m_g: -m_f.conj(),
            m_w: -m_f.conj(),
            pf,
            qf,
            c_f,
            pg,
            qg,
            c_g,
        })
    }

    /// `ζ − ζ₀` via the period-reduced, cancellation-free product form.
    #[inline]
    pub fn zdiff(&self, z: C<T>) -> C<T> {
        zeta_diff(z, self.spec.z0, self.spec.zeta0)
    }

    fn poles(cluster: &[(u32, C<T>)], d: C<T>) -> C<T> {
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

    fn mob(&self, cluster: &[(u32, C<T>)], zeta: C<T>) -> C<T> {
        let b = self.spec.zeta0.conj();
        let w = C::<T>::one() - b * zeta;
        let mut acc = C::<T>::zero();
        for &(k, c) in cluster {
            let mut wk = w;
            for _ in 1..k {
                wk = wk * w;
            }
            acc = acc + c / wk;
        }
        acc
    }

    fn mob_prime(&self, cluster: &[(u32, C<T>)], zeta: C<T>) -> C<T> {
        let b = self.spec.zeta0.conj();
        let w = C::<T>::one() - b * zeta;
        let mut acc = C::<T>::zero();
        for &(k, c) in cluster {
            let mut wk1 = w * w;
            for _ in 1..k {
                wk1 = wk1 * w;
            }
            acc = acc + c * b * r::<T>(k as f64) / wk1;
        }
        acc
    }

    /// `W = f′(z)`; `p/η − iω = 4W`.
    pub fn w_deriv(&self, z: C<T>) -> C<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        let b = self.spec.zeta0.conj();
        // d/dζ of the pole cluster: (k, c) ↦ (k+1, −k c).
        let mut pp = C::<T>::zero();
        for &(k, c) in &self.pf {
            let mut dk1 = d * d;
            for _ in 1..k {
                dk1 = dk1 * d;
            }
            pp = pp - c * r::<T>(k as f64) / dk1;
        }
        let s = self.m_f / d + self.m_f * b / (C::<T>::one() - b * zeta)
            + pp
            + self.mob_prime(&self.qf, zeta);
        crate::scalar::i::<T>() * zeta * s
    }

    /// Complex velocity `u − iv` at `z` (canonical frame; `Im z > 0`).
    pub fn velocity(&self, z: C<T>) -> C<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        let b = self.spec.zeta0.conj();
        let la2 = -(z.im + z.im); // log|ζ|²
        let img = C::<T>::one() - b * zeta;
        let mut val = self.m_w * (d.norm_sqr().ln() - img.norm_sqr().ln());
        val = val + crate::scalar::i::<T>() * la2 * self.w_deriv(z);
        let f_nonlog = Self::poles(&self.pf, d) + self.mob(&self.qf, zeta) + self.c_f;
        let g_nonlog = Self::poles(&self.pg, d) + self.mob(&self.qg, zeta) + self.c_g;
        val - f_nonlog.conj() + g_nonlog
    }

    /// `p/η − iω = 4 f′(z)`.
    pub fn four_f_prime(&self, z: C<T>) -> C<T> {
        self.w_deriv(z) * r::<T>(4.0)
    }

    /// Goursat data at `z`; the image log-modulus pair is folded into the
    /// single-valued bookkeeping (it winds nothing on contours inside the
    /// flow domain).
    pub fn goursat(&self, z: C<T>) -> GoursatParts<T> {
        let zeta = crate::model::zeta_of_z(z);
        let d = self.zdiff(z);
        GoursatParts {
            f_sv: Self::poles(&self.pf, d) + self.mob(&self.qf, zeta) + self.c_f,
            g_sv: Self::poles(&self.pg, d) + self.mob(&self.qg, zeta) + self.c_g,
            w_deriv: self.w_deriv(z),
            zeta,
        }
    }
}
