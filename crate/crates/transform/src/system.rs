//! Boundary-spectral collocation system for one periodic singularity row.
//!
//! The velocity field is written through Goursat functions `f`, `g` with the
//! principal singularity split off in closed form; the regular remainders
//! are unknown only through their left-edge restrictions, expanded in
//! Chebyshev polynomials.  Fourier-type edge transforms of those restrictions
//! ("spectral functions") obey one scalar combination `W(k)` that must
//! vanish on the Papkovich–Fadle eigenvalues `k h ∈ {s : sinh²s = s²}`;
//! collocating that condition at the eigenvalues, adding the `k → 0`
//! analyticity (Taylor-jet) conditions and a gauge, gives a small dense
//! least-squares problem for the edge coefficients.

use crate::aff::{Aff, JetA, JetC};
use crate::cheb::{cheb_row, chebval};
use crate::quad::{gl_nodes, linspace_bounds};
use crate::roots::pf_roots;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::TAU;
use stokes_lattice_core::{cexpm1, SingularityKind, SingularityKind64};

type C64 = Complex64;

/// Canonical spatial period of the singularity row.
pub const L_PER: f64 = TAU;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Errors from building or solving the transform system.
#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    /// The oracle implements closed forms for the stokeslet and stresslet
    /// families only.
    #[error("transform oracle supports stokeslet and stresslet kinds, got {0}")]
    UnsupportedKind(String),
    /// Geometry or discretisation parameters out of range.
    #[error("invalid transform input: {0}")]
    InvalidInput(String),
    /// The dense least-squares factorisation failed.
    #[error("least-squares solve failed: {0}")]
    SolveFailed(String),
}

/// Complex logarithm with the branch cut pointing straight down.
pub(crate) fn log_cd(w: C64) -> C64 {
    (-I * w).ln() + I * (std::f64::consts::PI / 2.0)
}

/// Closed-form pieces of the principal singularity (the part split off from
/// the unknowns): Goursat functions, their left-edge period differences, and
/// the branch-free wall combination.
pub(crate) struct Singular {
    kind: LocalKind,
    mu: C64,
    mub: C64,
    z0: C64,
    z0b: C64,
}

#[derive(Clone, Copy, Debug)]
enum LocalKind {
    Stokeslet,
    Stresslet,
}

impl Singular {
    fn new(kind: LocalKind, mu: C64, z0: C64) -> Self {
        Singular {
            kind,
            mu,
            mub: mu.conj(),
            z0,
            z0b: z0.conj(),
        }
    }

    /// Principal `f` part.
    fn f(&self, z: C64) -> C64 {
        let d = z - self.z0;
        match self.kind {
            LocalKind::Stokeslet => self.mu * log_cd(d),
            LocalKind::Stresslet => self.mu / d,
        }
    }

    /// Principal `f'` part.
    pub(crate) fn fp(&self, z: C64) -> C64 {
        let d = z - self.z0;
        match self.kind {
            LocalKind::Stokeslet => self.mu / d,
            LocalKind::Stresslet => -self.mu / (d * d),
        }
    }

    /// Principal `g'` part.
    fn gp(&self, z: C64) -> C64 {
        let d = z - self.z0;
        match self.kind {
            LocalKind::Stokeslet => -self.mub * log_cd(d) - self.mu * self.z0b / d,
            LocalKind::Stresslet => self.mu * self.z0b / (d * d),
        }
    }

    /// Left-edge period difference `f(w + l) − f(w)`.
    pub(crate) fn dfs(&self, w: C64) -> C64 {
        self.f(w + L_PER) - self.f(w)
    }

    /// Left-edge period difference `g'(w + l) − g'(w)`.
    pub(crate) fn dgs(&self, w: C64) -> C64 {
        self.gp(w + L_PER) - self.gp(w)
    }

    /// Branch-free wall combination `conj(f) − conj(z)·f' − g'` (equals the
    /// negated local velocity on a wall point).
    pub(crate) fn wall_i(&self, z: C64) -> C64 {
        let d = z - self.z0;
        let w = match self.kind {
            LocalKind::Stokeslet => -self.mub * d.norm_sqr().ln() + self.mu * d.conj() / d,
            LocalKind::Stresslet => -self.mub / d.conj() - self.mu * d.conj() / (d * d),
        };
        -w
    }
}

/// Oriented moment `q(k) = −i ∫₀ʰ e^{k y} dy`, written cancellation-free.
pub(crate) fn q_int(k: C64, h: f64) -> C64 {
    if (k * h).norm() < 1e-8 {
        return -I * h * (ONE + k * h / 2.0);
    }
    -I * cexpm1(k * h) / k
}

/// Moment `q₁(k) = ∫₀ʰ y e^{k y} dy`, series form near `k = 0`.
pub(crate) fn q1_int(k: C64, h: f64) -> C64 {
    let x = k * h;
    if x.norm() < 0.5 {
        // Σ x^j (j+1)/(j+2)!  evaluated by Horner; 16! is exact in f64.
        let mut s = ZERO;
        for j in (0..=14u32).rev() {
            let fact: f64 = (1..=(j + 2)).map(f64::from).product();
            s = s * x + C64::from((f64::from(j) + 1.0) / fact);
        }
        return h * h * s;
    }
    let ekh = x.exp();
    h * ekh / k - cexpm1(x) / (k * k)
}

/// Per-`k` quadrature data: Chebyshev edge moments and forcing transforms.
#[derive(Clone)]
struct KData {
    /// Left-edge moments of the Chebyshev basis (build `ρ₄`, `ρ̂₄`).
    am: Vec<C64>,
    /// Weighted moments with an extra `y` (build `σ₄`).
    bm: Vec<C64>,
    /// Bottom-wall forcing transform.
    r1: C64,
    /// Left-edge period-difference forcing transform.
    r2: C64,
    /// Top-wall forcing transform.
    r3: C64,
    /// Left-edge derivative forcing transform.
    r4: C64,
    /// First moment of the period-difference forcing.
    s2: C64,
    q: C64,
    q1: C64,
}

/// Diagnostics of the least-squares collocation solve.
#[derive(Clone, Debug, Default)]
pub struct SolveDiagnostics {
    /// Rows × columns of the assembled real system.
    pub shape: (usize, usize),
    /// Numerical rank at the least-squares cutoff.
    pub rank: usize,
    /// Ratio of extreme singular values.
    pub condition: f64,
    /// Max-norm residual `‖Ax − b‖_∞` of the solved system.
    pub residual: f64,
}

/// Left-edge Chebyshev collocation system for one singularity.
///
/// Unknown layout (real vector `x`): `[Re a | Im a | Re b | Im b | Re d, Im d]`
/// where `f_R(iy) = Σ aₘ Tₘ(2y/h−1)`, `g'_R(iy) = Σ bₘ Tₘ(2y/h−1)` are the
/// regular Goursat remainders on the left edge and `d` is the periodicity
/// constant `f(z+l) − f(z)`.
pub struct TransformSystem {
    /// Singularity strength.
    pub mu: C64,
    /// Singularity position inside the canonical cell.
    pub z0: C64,
    /// Channel height.
    pub h: f64,
    /// Chebyshev truncation per edge function.
    pub m_cheb: usize,
    /// Number of Papkovich–Fadle eigenvalues collocated (each yields rows
    /// at `k` and `conj k`).
    pub n_colloc: usize,
    /// Number of real unknowns, `4·m_cheb + 2`.
    pub nx: usize,
    /// Collocation wavenumbers `s/h`, sorted by modulus.
    pub ks: Vec<C64>,
    /// Corner constant `f_s(l) − f_s(0)` of the principal part.
    pub dfs0: C64,
    /// Corner constant `f_s(l+ih) − f_s(ih)` of the principal part.
    pub dfsih: C64,
    pub(crate) sing: Singular,
    cache: RefCell<HashMap<(u64, u64), KData>>,
    /// Solved unknown vector (empty until [`solve`](Self::solve) runs).
    pub x: Vec<f64>,
    /// Solve diagnostics (default until [`solve`](Self::solve) runs).
    pub diag: SolveDiagnostics,
}

impl TransformSystem {
    /// Build the collocation system for a canonical-frame singularity
    /// (period `2π`, height `h`).  Does not solve.
    pub fn new(
        kind: &SingularityKind64,
        z0: C64,
        h: f64,
        m_cheb: usize,
        n_colloc: usize,
    ) -> Result<Self, TransformError> {
        let (local, mu) = match kind {
            SingularityKind::Stokeslet(mu) => (LocalKind::Stokeslet, *mu),
            SingularityKind::Stresslet(mu) => (LocalKind::Stresslet, *mu),
            other => return Err(TransformError::UnsupportedKind(format!("{other:?}"))),
        };
        if !(h.is_finite() && h > 0.0) {
            return Err(TransformError::InvalidInput(format!(
                "height must be positive and finite, got {h}"
            )));
        }
        if !(mu.re.is_finite() && mu.im.is_finite()) {
            return Err(TransformError::InvalidInput("strength must be finite".into()));
        }
        if !(z0.im > 0.0 && z0.im < h) || !(z0.re > 0.0 && z0.re < L_PER) {
            return Err(TransformError::InvalidInput(format!(
                "position {z0} must lie strictly inside the canonical cell (0, 2π) × (0, {h})"
            )));
        }
        if m_cheb < 4 || n_colloc < m_cheb {
            return Err(TransformError::InvalidInput(format!(
                "need m_cheb ≥ 4 and n_colloc ≥ m_cheb, got {m_cheb}, {n_colloc}"
            )));
        }
        let sing = Singular::new(local, mu, z0);
        let roots = pf_roots(n_colloc);
        let ks = roots.iter().map(|s| s / h).collect();
        let dfs0 = sing.dfs(ZERO);
        let dfsih = sing.dfs(I * h);
        Ok(TransformSystem {
            mu,
            z0,
            h,
            m_cheb,
            n_colloc,
            nx: 4 * m_cheb + 2,
            ks,
            dfs0,
            dfsih,
            sing,
            cache: RefCell::new(HashMap::new()),
            x: Vec::new(),
            diag: SolveDiagnostics::default(),
        })
    }

    // ---------------- affine builders ----------------

    /// Affine value `Σ coefs_m · a_m` over the `a` coefficient block.
    fn a_aff(&self, coefs: &[C64]) -> Aff {
        let m = self.m_cheb;
        let mut v = vec![ZERO; self.nx];
        for (j, c) in coefs.iter().enumerate() {
            v[j] = *c;
            v[m + j] = I * c;
        }
        Aff { v, c: ZERO }
    }

    /// Affine value `Σ coefs_m · b_m` over the `b` coefficient block.
    fn b_aff(&self, coefs: &[C64]) -> Aff {
        let m = self.m_cheb;
        let mut v = vec![ZERO; self.nx];
        for (j, c) in coefs.iter().enumerate() {
            v[2 * m + j] = *c;
            v[3 * m + j] = I * c;
        }
        Aff { v, c: ZERO }
    }

    /// Affine value `scale · d` over the periodicity-constant slot.
    pub(crate) fn d_aff(&self, scale: C64) -> Aff {
        let mut v = vec![ZERO; self.nx];
        v[self.nx - 2] = scale;
        v[self.nx - 1] = I * scale;
        Aff { v, c: ZERO }
    }

    // ---------------- per-k quadrature data ----------------

    /// Composite Gauss–Legendre rule on `[0, h]` resolving `e^{ky}`.
    fn left_quad(&self, k: C64) -> (Vec<f64>, Vec<f64>) {
        let n_pan = 10usize.max((k.im.abs() * self.h / 3.0) as usize + 1);
        gl_nodes(&linspace_bounds(0.0, self.h, n_pan), 16)
    }

    /// Wall rule on `[0, l]`, graded toward the end where `e^{−ikx}` grows
    /// and refined around the singularity's horizontal position.
    fn wall_quad(&self, k: C64) -> (Vec<f64>, Vec<f64>) {
        let x0 = self.z0.re;
        let mut bs: Vec<f64> = if k.im.abs() <= 0.5 {
            linspace_bounds(0.0, L_PER, 16)
        } else {
            let delta = (3.0 / k.im.abs()).min(0.4);
            let mut set = vec![0.0, L_PER];
            let mut step = delta;
            let mut pos = 0.0;
            while pos + step < L_PER {
                pos += step;
                set.push(if k.im > 0.0 { L_PER - pos } else { pos });
                step = (2.0 * step).min(0.8);
            }
            set
        };
        for p in [x0 - 0.25, x0 + 0.25, x0 - 0.08, x0 + 0.08] {
            if p > 0.01 && p < L_PER - 0.01 {
                bs.push(p);
            }
        }
        bs.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        bs.dedup();
        gl_nodes(&bs, 16)
    }

    /// All `k`-dependent known quantities (cached by the bits of `k`).
    fn kdata(&self, k: C64) -> KData {
        let key = (k.re.to_bits(), k.im.to_bits());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let h = self.h;
        let m = self.m_cheb;
        let (ys, wy) = self.left_quad(k);
        let mut am = vec![ZERO; m];
        let mut bm = vec![ZERO; m];
        let (mut r2, mut s2, mut r4) = (ZERO, ZERO, ZERO);
        for (&y, &w) in ys.iter().zip(&wy) {
            let eky = (k * y).exp();
            let wy_e = w * eky;
            let row = cheb_row(2.0 * y / h - 1.0, m);
            for (j, &t) in row.iter().enumerate() {
                am[j] += -I * wy_e * t;
                bm[j] += wy_e * (y * t);
            }
            let iy = I * y;
            let dfs = self.sing.dfs(iy);
            r2 += -I * wy_e * dfs;
            s2 += -I * wy_e * iy * dfs;
            r4 += -I * wy_e * (L_PER * self.sing.fp(iy) + self.sing.dgs(iy));
        }
        let (xs, wx) = self.wall_quad(k);
        let (mut r1, mut r3s) = (ZERO, ZERO);
        for (&x, &w) in xs.iter().zip(&wx) {
            let ph = (-I * k * x).exp();
            r1 += w * ph * self.sing.wall_i(C64::new(x, 0.0));
            r3s += w * ph * self.sing.wall_i(C64::new(x, h));
        }
        let out = KData {
            am,
            bm,
            r1,
            r2,
            r3: -(k * h).exp() * r3s,
            r4,
            s2,
            q: q_int(k, h),
            q1: q1_int(k, h),
        };
        self.cache.borrow_mut().insert(key, out.clone());
        out
    }

    // ---------------- spectral functions (affine in the unknowns) ----------------

    /// Left-edge transform `ρ₄(k)` of `f_R`.
    pub(crate) fn rho4(&self, k: C64) -> Aff {
        self.a_aff(&self.kdata(k).am)
    }

    /// Left-edge transform `ρ̂₄(k)` of `g'_R`.
    pub(crate) fn rhohat4(&self, k: C64) -> Aff {
        self.b_aff(&self.kdata(k).am)
    }

    /// Left-edge first-moment transform `σ₄(k)` of `z f_R`.
    pub(crate) fn sigma4(&self, k: C64) -> Aff {
        self.a_aff(&self.kdata(k).bm)
    }

    /// Corner value `f_R(0)` as an affine value.
    pub(crate) fn fr0_aff(&self) -> Aff {
        let row: Vec<C64> = cheb_row(-1.0, self.m_cheb).iter().map(|&t| C64::from(t)).collect();
        self.a_aff(&row)
    }

    /// Corner value `f_R(ih)` as an affine value.
    pub(crate) fn frih_aff(&self) -> Aff {
        let row: Vec<C64> = cheb_row(1.0, self.m_cheb).iter().map(|&t| C64::from(t)).collect();
        self.a_aff(&row)
    }

    /// `pref · W(k)`: the spectral combination that must vanish at the
    /// Papkovich–Fadle wavenumbers, with the prefactor folded into every
    /// exponentially growing factor so a caller may pass `pref = e^{−2kh}`
    /// for overflow-free evaluation at large real `kh`.
    pub(crate) fn w_k(&self, k: C64, pref: C64) -> Aff {
        let h = self.h;
        let l = L_PER;
        let kd = self.kdata(k);
        let kdm = self.kdata(-k.conj());
        let e = (-I * k * l).exp();
        let ekh = (k * h).exp();
        let e2kh = (2.0 * k * h).exp();
        let d = self.d_aff(ONE);
        let rho4a = self.rho4(k);
        let rhohat4a = self.rhohat4(k);
        let sigma4a = self.sigma4(k);
        let fr0 = self.fr0_aff();
        let frih = self.frih_aff();
        let frl = fr0.add(&d).sub_c(self.dfs0);
        let frlih = frih.add(&d).sub_c(self.dfsih);
        // edge-2 values eliminated through the periodicity relations
        let rho2 = d
            .scale(kd.q)
            .add(&rho4a)
            .rsub_c(kd.r2)
            .scale(e * pref);
        let sigma2 = sigma4a
            .add(&rho4a.scale(C64::from(l)))
            .add(&d.scale(kd.q1 + l * kd.q))
            .sub_c(kd.s2)
            .sub_c(l * kd.r2)
            .scale(-e * pref);
        let rhohat2 = rho4a
            .scale(I * k * l)
            .sub(&rhohat4a)
            .add(&fr0.scale(C64::from(l)))
            .sub(&frih.scale(ekh * l))
            .sub(&d.conj().scale(kd.q))
            .add_c(kd.r4)
            .scale(e * pref);
        let rho4m_conj = self.rho4(-k.conj()).conj();
        let rho2bar_m = rho4m_conj
            .add(&d.conj().scale(kdm.q.conj()))
            .rsub_c(kdm.r2.conj())
            .scale(e * pref);
        let rho4bar_m = rho4m_conj.scale(pref);
        let rk = frih
            .scale(-I * h * ekh * pref)
            .add(&frlih.scale(C64::new(-l, h) * e * ekh * pref));
        Aff::constant(self.nx, (kd.r1 + kd.r3) * pref)
            .sub(&frl.scale(e * pref * l))
            .sub(&rk)
            .sub(&rho2bar_m.add(&rho4bar_m).scale(e2kh))
            .add(&rho2.add(&rho4a.scale(pref)).scale(2.0 * k * h - ONE))
            .add(&sigma2.add(&sigma4a.scale(pref)).scale(I * k))
            .add(&rhohat2)
            .add(&rhohat4a.scale(pref))
    }

    /// Exact Taylor jet of `W(k)` about `k = 0` through order `k²`.
    fn w_k_jet(&self) -> JetA {
        let h = self.h;
        let l = L_PER;
        let nx = self.nx;
        let m = self.m_cheb;
        let fact = [1.0, 1.0, 2.0];
        let (ys, wy) = self.left_quad(ZERO);
        let mut amj = [vec![ZERO; m], vec![ZERO; m], vec![ZERO; m]];
        let mut bmj = [vec![ZERO; m], vec![ZERO; m], vec![ZERO; m]];
        let mut r2j = [ZERO; 3];
        let mut r4j = [ZERO; 3];
        let mut s2j = [ZERO; 3];
        for (&y, &w) in ys.iter().zip(&wy) {
            let row = cheb_row(2.0 * y / h - 1.0, m);
            let iy = I * y;
            let dfs = self.sing.dfs(iy);
            let dgs = self.sing.dgs(iy);
            let fps = self.sing.fp(iy);
            for j in 0..3 {
                let mom = w * y.powi(j as i32) / fact[j];
                for (t, &tv) in row.iter().enumerate() {
                    amj[j][t] += -I * (mom * tv);
                    bmj[j][t] += C64::from(mom * y * tv);
                }
                r2j[j] += -I * mom * dfs;
                s2j[j] += -I * mom * iy * dfs;
                r4j[j] += -I * mom * (L_PER * fps + dgs);
            }
        }
        let (xs, wx) = self.wall_quad(ZERO);
        let mut r1j = [ZERO; 3];
        let mut r3j = [ZERO; 3];
        for (&x, &w) in xs.iter().zip(&wx) {
            let i1 = self.sing.wall_i(C64::new(x, 0.0));
            let i3 = self.sing.wall_i(C64::new(x, h));
            let mut pw1 = ONE; // (−ix)^j / j!
            let mut pw3 = ONE; // (h−ix)^j / j!
            for j in 0..3 {
                r1j[j] += w * i1 * pw1;
                r3j[j] -= w * i3 * pw3;
                pw1 = pw1 * C64::new(0.0, -x) / (j as f64 + 1.0);
                pw3 = pw3 * C64::new(h, -x) / (j as f64 + 1.0);
            }
        }
        let rho4 = JetA([
            self.a_aff(&amj[0]),
            self.a_aff(&amj[1]),
            self.a_aff(&amj[2]),
        ]);
        let sigma4 = JetA([
            self.a_aff(&bmj[0]),
            self.a_aff(&bmj[1]),
            self.a_aff(&bmj[2]),
        ]);
        let rhohat4 = JetA([
            self.b_aff(&amj[0]),
            self.b_aff(&amj[1]),
            self.b_aff(&amj[2]),
        ]);
        let r1 = JetC(r1j);
        let r2 = JetC(r2j);
        let r3 = JetC(r3j);
        let r4 = JetC(r4j);
        let s2 = JetC(s2j);
        let q = JetC([
            C64::new(0.0, -h),
            C64::new(0.0, -h * h / 2.0),
            C64::new(0.0, -h * h * h / 6.0),
        ]);
        let q1 = JetC([
            C64::from(h * h / 2.0),
            C64::from(h * h * h / 3.0),
            C64::from(h * h * h * h / 8.0),
        ]);
        let e_jet = JetC([ONE, C64::new(0.0, -l), C64::from(-l * l / 2.0)]);
        let ekh = JetC([ONE, C64::from(h), C64::from(h * h / 2.0)]);
        let e2kh = JetC([ONE, C64::from(2.0 * h), C64::from(2.0 * h * h)]);
        let hc = C64::new(h, -l);
        let ekh_e = JetC([ONE, hc, hc * hc / 2.0]);
        let d = JetA::from_aff(self.d_aff(ONE));
        let db = JetA::from_aff(self.d_aff(ONE).conj());
        let fr0 = JetA::from_aff(self.fr0_aff());
        let frih = JetA::from_aff(self.frih_aff());
        let frl = fr0.add(&d).add_c(-self.dfs0);
        let frlih = frih.add(&d).add_c(-self.dfsih);
        let rho2 = JetA::from_jc(nx, &r2)
            .sub(&d.mul_jc(&q))
            .sub(&rho4)
            .mul_jc(&e_jet);
        let sigma2 = sigma4
            .add(&rho4.scale(C64::from(l)))
            .add(&d.mul_jc(&q1.add(&q.scale(C64::from(l)))))
            .sub(&JetA::from_jc(nx, &s2))
            .sub(&JetA::from_jc(nx, &r2.scale(C64::from(l))))
            .mul_jc(&e_jet)
            .neg();
        let il_k = JetC([ZERO, I * l, ZERO]);
        let rhohat2 = JetA::from_jc(nx, &r4)
            .add(&rho4.mul_jc(&il_k))
            .sub(&rhohat4)
            .add(&fr0.scale(C64::from(l)))
            .sub(&frih.mul_jc(&ekh).scale(C64::from(l)))
            .sub(&db.mul_jc(&q))
            .mul_jc(&e_jet);
        let rk = frih
            .mul_jc(&ekh)
            .scale(C64::new(0.0, -h))
            .add(&frlih.mul_jc(&ekh_e).scale(C64::new(-l, h)));
        let lin1 = JetC([-ONE, C64::from(2.0 * h), ZERO]);
        let lin2 = JetC([ZERO, I, ZERO]);
        JetA::from_jc(nx, &r1.add(&r3))
            .sub(&frl.mul_jc(&e_jet).scale(C64::from(l)))
            .sub(&rk)
            .sub(&rho2.conj_neg().add(&rho4.conj_neg()).mul_jc(&e2kh))
            .add(&rho2.add(&rho4).mul_jc(&lin1))
            .add(&sigma2.add(&sigma4).mul_jc(&lin2))
            .add(&rhohat2)
            .add(&rhohat4)
    }

    // ---------------- assembly and solve ----------------

    /// Scaled collocation rows (each an affine value to be driven to zero)
    /// plus the `k = 0` jet values `(W(0), W'(0), W''(0))`.
    fn condition_rows(&self) -> (Vec<Aff>, [Aff; 3]) {
        let mut rows = Vec::with_capacity(2 * self.n_colloc);
        for &k in &self.ks {
            for kk in [k, k.conj()] {
                let wk = self.w_k(kk, ONE);
                let wbm = self.w_k(-kk.conj(), ONE).conj();
                let t = wk
                    .scale(2.0 * kk * self.h)
                    .sub(&wbm.scale((2.0 * kk * self.h).exp() - ONE));
                let sc = t.max_abs().max(1e-300);
                rows.push(t.scale(C64::from(1.0 / sc)));
            }
        }
        let jet = self.w_k_jet();
        let k0 = [
            jet.0[0].clone(),
            jet.0[1].clone(),
            jet.0[2].scale(C64::from(2.0)),
        ];
        (rows, k0)
    }

    /// Assemble the real least-squares system `A x ≈ b`: two real rows per
    /// collocation row, four `k = 0` analyticity rows, three gauge rows.
    pub fn real_system(&self) -> (DMatrix<f64>, DVector<f64>) {
        let (rows, k0) = self.condition_rows();
        let mut data: Vec<Vec<f64>> = Vec::new();
        let mut rhs: Vec<f64> = Vec::new();
        for t in &rows {
            data.push(t.v.iter().map(|z| z.re).collect());
            rhs.push(-t.c.re);
            data.push(t.v.iter().map(|z| z.im).collect());
            rhs.push(-t.c.im);
        }
        let mut add_real = |t: &Aff, imag: bool| {
            let sc = t.max_abs().max(1e-300);
            if imag {
                data.push(t.v.iter().map(|z| z.im / sc).collect());
                rhs.push(-t.c.im / sc);
            } else {
                data.push(t.v.iter().map(|z| z.re / sc).collect());
                rhs.push(-t.c.re / sc);
            }
        };
        let [w0, w1, w2] = k0;
        add_real(&w0, false);
        add_real(&w0, true);
        add_real(&w1, false);
        add_real(&w2.add(&w1.scale(C64::from(-self.h))), true);
        // gauge: pin the additive and linear gauge freedom of the split
        add_real(&self.fr0_aff(), false);
        add_real(&self.fr0_aff(), true);
        add_real(&self.frih_aff(), true);
        let nr = data.len();
        let a = DMatrix::from_fn(nr, self.nx, |i, j| data[i][j]);
        (a, DVector::from_vec(rhs))
    }

    /// Solve the least-squares system, storing unknowns and diagnostics.
    pub fn solve(&mut self) -> Result<(), TransformError> {
        let (a, b) = self.real_system();
        let (nr, nc) = a.shape();
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let smin = svd
            .singular_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let cutoff = nr.max(nc) as f64 * f64::EPSILON * smax;
        let x = svd
            .solve(&b, cutoff)
            .map_err(|e| TransformError::SolveFailed(e.to_string()))?;
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > cutoff)
            .count();
        let residual = (&a * &x - &b).amax();
        self.x = x.iter().copied().collect();
        self.diag = SolveDiagnostics {
            shape: (nr, nc),
            rank,
            condition: smax / smin,
            residual,
        };
        Ok(())
    }

    // ---------------- solved accessors ----------------

    /// Complex Chebyshev coefficients of the solved `f_R` edge function.
    pub fn a_coeffs(&self) -> Vec<C64> {
        let m = self.m_cheb;
        (0..m)
            .map(|j| C64::new(self.x[j], self.x[m + j]))
            .collect()
    }

    /// Complex Chebyshev coefficients of the solved `g'_R` edge function.
    pub fn b_coeffs(&self) -> Vec<C64> {
        let m = self.m_cheb;
        (0..m)
            .map(|j| C64::new(self.x[2 * m + j], self.x[3 * m + j]))
            .collect()
    }

    /// Solved left-edge `f_R(iy)`.
    pub fn fr_left(&self, y: f64) -> C64 {
        chebval(2.0 * y / self.h - 1.0, &self.a_coeffs())
    }

    /// Solved left-edge `g'_R(iy)`.
    pub fn gp_left(&self, y: f64) -> C64 {
        chebval(2.0 * y / self.h - 1.0, &self.b_coeffs())
    }

    /// Solved periodicity constant `d`.
    pub fn d_solved(&self) -> C64 {
        C64::new(self.x[self.nx - 2], self.x[self.nx - 1])
    }

    /// Evaluate `W(k)` at the solved unknowns (plain complex value).
    pub fn w_value(&self, k: C64) -> C64 {
        self.w_k(k, ONE).value(&self.x)
    }

    /// Evaluate `pref·W(k)` at the solved unknowns.
    pub(crate) fn w_value_pref(&self, k: C64, pref: C64) -> C64 {
        self.w_k(k, pref).value(&self.x)
    }

    /// Forcing transform values at the solved state, for diagnostics:
    /// `(R1, R2, R4, q)` at this `k`.
    pub(crate) fn forcing(&self, k: C64) -> (C64, C64, C64, C64) {
        let kd = self.kdata(k);
        (kd.r1, kd.r2, kd.r4, kd.q)
    }
}
