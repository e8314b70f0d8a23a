//! Affine-in-unknowns complex values and their quadratic Taylor jets.
//!
//! The collocation system is linear in a real unknown vector `x`; every
//! spectral quantity is therefore an [`Aff`]: a complex row vector `v` plus
//! a constant, representing `v·x + c`.  Rows of the linear system are
//! affine values; equations say "this affine value is zero".  The `k → 0`
//! analyticity conditions additionally need the first two Taylor
//! coefficients of such values, carried by the jet types [`JetC`] (known
//! scalars) and [`JetA`] (affine coefficients).

use num_complex::Complex64;

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Complex value affine in a real unknown vector: `v·x + c`.
#[derive(Clone, Debug)]
pub struct Aff {
    /// Coefficient row.
    pub v: Vec<C64>,
    /// Constant term.
    pub c: C64,
}

impl Aff {
    /// Zero value with `nx` unknowns.
    pub fn zeros(nx: usize) -> Self {
        Aff {
            v: vec![ZERO; nx],
            c: ZERO,
        }
    }

    /// Constant value (zero coefficient row).
    pub fn constant(nx: usize, c: C64) -> Self {
        Aff {
            v: vec![ZERO; nx],
            c,
        }
    }

    /// Evaluate at a concrete unknown vector.
    pub fn value(&self, x: &[f64]) -> C64 {
        debug_assert_eq!(self.v.len(), x.len());
        let mut s = self.c;
        for (vj, xj) in self.v.iter().zip(x) {
            s += vj * xj;
        }
        s
    }

    /// Complex conjugate (conjugates both row and constant; the unknowns
    /// are real, so this is the conjugate of the represented value).
    pub fn conj(&self) -> Aff {
        Aff {
            v: self.v.iter().map(|z| z.conj()).collect(),
            c: self.c.conj(),
        }
    }

    /// Sum with another affine value.
    pub fn add(&self, o: &Aff) -> Aff {
        Aff {
            v: self.v.iter().zip(&o.v).map(|(a, b)| a + b).collect(),
            c: self.c + o.c,
        }
    }

    /// Difference of affine values.
    pub fn sub(&self, o: &Aff) -> Aff {
        Aff {
            v: self.v.iter().zip(&o.v).map(|(a, b)| a - b).collect(),
            c: self.c - o.c,
        }
    }

    /// Add a known constant.
    pub fn add_c(&self, c: C64) -> Aff {
        Aff {
            v: self.v.clone(),
            c: self.c + c,
        }
    }

    /// Subtract a known constant.
    pub fn sub_c(&self, c: C64) -> Aff {
        self.add_c(-c)
    }

    /// Known constant minus this value.
    pub fn rsub_c(&self, c: C64) -> Aff {
        Aff {
            v: self.v.iter().map(|z| -z).collect(),
            c: c - self.c,
        }
    }

    /// Scale by a known complex factor.
    pub fn scale(&self, s: C64) -> Aff {
        Aff {
            v: self.v.iter().map(|z| z * s).collect(),
            c: self.c * s,
        }
    }

    /// Negation.
    pub fn neg(&self) -> Aff {
        self.scale(C64::new(-1.0, 0.0))
    }

    /// Largest coefficient magnitude, constant included (row scale).
    pub fn max_abs(&self) -> f64 {
        self.v
            .iter()
            .map(|z| z.norm())
            .fold(self.c.norm(), f64::max)
    }
}

/// Quadratic Taylor jet `c0 + c1 k + c2 k²` with known complex coefficients.
#[derive(Clone, Copy, Debug)]
pub struct JetC(pub [C64; 3]);

impl JetC {
    /// Constant jet.
    pub fn constant(c: C64) -> Self {
        JetC([c, ZERO, ZERO])
    }

    /// Truncated product of two known jets.
    pub fn mul(&self, o: &JetC) -> JetC {
        let a = &self.0;
        let b = &o.0;
        JetC([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
        ])
    }

    /// Sum of known jets.
    pub fn add(&self, o: &JetC) -> JetC {
        JetC([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
        ])
    }

    /// Jet scaled by a known value.
    pub fn scale(&self, s: C64) -> JetC {
        JetC([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

/// Quadratic Taylor jet with affine coefficients.
#[derive(Clone, Debug)]
pub struct JetA(pub [Aff; 3]);

impl JetA {
    /// Jet with a constant (affine) zeroth coefficient.
    pub fn from_aff(a: Aff) -> Self {
        let nx = a.v.len();
        JetA([a, Aff::zeros(nx), Aff::zeros(nx)])
    }

    /// Promote a known jet to an affine jet with zero coefficient rows.
    pub fn from_jc(nx: usize, jc: &JetC) -> Self {
        JetA([
            Aff::constant(nx, jc.0[0]),
            Aff::constant(nx, jc.0[1]),
            Aff::constant(nx, jc.0[2]),
        ])
    }

    /// Component-wise sum.
    pub fn add(&self, o: &JetA) -> JetA {
        JetA([
            self.0[0].add(&o.0[0]),
            self.0[1].add(&o.0[1]),
            self.0[2].add(&o.0[2]),
        ])
    }

    /// Component-wise difference.
    pub fn sub(&self, o: &JetA) -> JetA {
        JetA([
            self.0[0].sub(&o.0[0]),
            self.0[1].sub(&o.0[1]),
            self.0[2].sub(&o.0[2]),
        ])
    }

    /// Add a known constant to the zeroth coefficient.
    pub fn add_c(&self, c: C64) -> JetA {
        JetA([self.0[0].add_c(c), self.0[1].clone(), self.0[2].clone()])
    }

    /// Negation.
    pub fn neg(&self) -> JetA {
        JetA([self.0[0].neg(), self.0[1].neg(), self.0[2].neg()])
    }

    /// Scale by a known complex factor.
    pub fn scale(&self, s: C64) -> JetA {
        JetA([self.0[0].scale(s), self.0[1].scale(s), self.0[2].scale(s)])
    }

    /// Truncated product with a known jet.
    pub fn mul_jc(&self, o: &JetC) -> JetA {
        let a = &self.0;
        let b = &o.0;
        JetA([
            a[0].scale(b[0]),
            a[0].scale(b[1]).add(&a[1].scale(b[0])),
            a[0].scale(b[2]).add(&a[1].scale(b[1])).add(&a[2].scale(b[0])),
        ])
    }

    /// Jet of `k ↦ conj(F(−k))` on the real axis: conjugate each
    /// coefficient and alternate signs.
    pub fn conj_neg(&self) -> JetA {
        JetA([
            self.0[0].conj(),
            self.0[1].conj().neg(),
            self.0[2].conj(),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(v: &[(f64, f64)], c: (f64, f64)) -> Aff {
        Aff {
            v: v.iter().map(|&(r, i)| C64::new(r, i)).collect(),
            c: C64::new(c.0, c.1),
        }
    }

    #[test]
    fn affine_algebra_tracks_values() {
        let x = [0.5, -2.0];
        let a = aff(&[(1.0, 0.0), (0.0, 1.0)], (0.25, -0.5));
        let b = aff(&[(2.0, -1.0), (1.0, 1.0)], (0.0, 1.0));
        let va = a.value(&x);
        let vb = b.value(&x);
        assert!((a.add(&b).value(&x) - (va + vb)).norm() < 1e-15);
        assert!((a.sub(&b).value(&x) - (va - vb)).norm() < 1e-15);
        let s = C64::new(0.3, 0.7);
        assert!((a.scale(s).value(&x) - va * s).norm() < 1e-15);
        assert!((a.conj().value(&x) - va.conj()).norm() < 1e-15);
        assert!((a.rsub_c(s).value(&x) - (s - va)).norm() < 1e-15);
        assert!(a.max_abs() >= 1.0);
    }

    #[test]
    fn jet_product_truncates_consistently() {
        // Compare the jet product against values at small k.
        let p = JetC([C64::new(1.0, 0.0), C64::new(0.0, 2.0), C64::new(-0.5, 0.0)]);
        let q = JetC([C64::new(0.0, 1.0), C64::new(3.0, 0.0), C64::new(0.0, -1.0)]);
        let pq = p.mul(&q);
        let eval = |j: &JetC, k: f64| j.0[0] + j.0[1] * k + j.0[2] * k * k;
        let k = 1e-4;
        let direct = eval(&p, k) * eval(&q, k);
        assert!((eval(&pq, k) - direct).norm() < 1e-11);
    }

    #[test]
    fn affine_jet_conj_neg_matches_pointwise_conjugation() {
        let x = [1.25, 0.75];
        let j = JetA([
            aff(&[(1.0, 2.0), (0.0, -1.0)], (0.5, 0.5)),
            aff(&[(0.0, 1.0), (2.0, 0.0)], (-1.0, 0.25)),
            aff(&[(1.0, 0.0), (0.0, 0.0)], (0.0, -2.0)),
        ]);
        let jc = j.conj_neg();
        let eval = |jet: &JetA, k: f64| {
            jet.0[0].value(&x) + jet.0[1].value(&x) * k + jet.0[2].value(&x) * k * k
        };
        for k in [0.01, -0.02] {
            let want = eval(&j, -k).conj();
            assert!((eval(&jc, k) - want).norm() < 1e-12);
        }
    }
}
