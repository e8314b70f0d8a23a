//! Minimal double-double arithmetic (roughly 31 significant decimal digits).
//!
//! Used to polish the Papkovich–Fadle eigenvalues beyond `f64` precision so
//! that the collocation residuals downstream are limited by quadrature, not
//! by eigenvalue error.  The operation set is deliberately small: field
//! operations, `exp`, simultaneous `sin`/`cos` with argument reduction
//! against a double-double `π/2`, and complex hyperbolics assembled from
//! them.  Argument reduction is accurate for the moderate arguments the
//! eigenvalue search produces (`|x|` up to a few hundred), not for
//! astronomically large ones.

use core::ops::{Add, Div, Mul, Neg, Sub};
use num_complex::Complex64;

/// Error-free transformation: `a + b = s + e` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming `|a| ≥ |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    /// Leading component.
    pub hi: f64,
    /// Trailing correction.
    pub lo: f64,
}

/// `ln 2` to double-double precision.
const LN2: Dd = Dd {
    hi: 0.693_147_180_559_945_3,
    lo: 2.319_046_813_846_299_6e-17,
};

/// `π/2` to double-double precision.
const FRAC_PI_2: Dd = Dd {
    hi: 1.570_796_326_794_896_6,
    lo: 6.123_233_995_736_766e-17,
};

impl Dd {
    /// Renormalising constructor (orders and compresses the pair).
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Lift an exact `f64`.
    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest `f64`.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi
    }

    /// Absolute value.
    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// `e^x` by reduction against `ln 2` and a Taylor tail on the remainder.
    pub fn exp(self) -> Dd {
        let m = (self.hi / LN2.hi).round();
        let r = self - LN2 * m;
        let mut term = Dd::from_f64(1.0);
        let mut sum = Dd::from_f64(1.0);
        for n in 1..40 {
            term = (term * r).div_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() <= 1e-35 * sum.hi.abs() {
                break;
            }
        }
        // Scaling by 2^m is exact.
        let sc = (2.0f64).powi(m as i32);
        Dd {
            hi: sum.hi * sc,
            lo: sum.lo * sc,
        }
    }

    /// Simultaneous `(sin x, cos x)` by reduction modulo `π/2`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let q = (self.hi / FRAC_PI_2.hi).round();
        let r = self - FRAC_PI_2 * q;
        let s = sin_taylor(r);
        let c = cos_taylor(r);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    /// Division by an exact `f64`.
    #[inline]
    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, pe) = two_prod(q1, b);
        let (dh, de) = two_sum(self.hi, -p);
        let q2 = (dh + (de + self.lo - pe)) / b;
        Dd::new(q1, q2)
    }
}

/// Taylor sine on a reduced argument `|r| ≤ π/4`.
fn sin_taylor(r: Dd) -> Dd {
    let r2 = r * r;
    let mut term = r;
    let mut sum = r;
    for n in 1..24u32 {
        let den = ((2 * n) * (2 * n + 1)) as f64;
        term = -(term * r2).div_f64(den);
        sum = sum + term;
        if term.hi.abs() <= 1e-35 * (1.0 + sum.hi.abs()) {
            break;
        }
    }
    sum
}

/// Taylor cosine on a reduced argument `|r| ≤ π/4`.
fn cos_taylor(r: Dd) -> Dd {
    let r2 = r * r;
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    for n in 1..24u32 {
        let den = ((2 * n - 1) * (2 * n)) as f64;
        term = -(term * r2).div_f64(den);
        sum = sum + term;
        if term.hi.abs() <= 1e-35 * (1.0 + sum.hi.abs()) {
            break;
        }
    }
    sum
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::new(s1, s2 + t2)
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::new(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::new(p, e + self.lo * b)
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r2 = r - b * q2;
        let q3 = r2.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e + q3)
    }
}

/// Complex double-double value.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cdd {
    /// Real part.
    pub re: Dd,
    /// Imaginary part.
    pub im: Dd,
}

impl Cdd {
    /// Lift an `f64` complex value.
    #[inline]
    pub fn from_c64(z: Complex64) -> Self {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    /// Leading `f64` parts.
    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi, self.im.hi)
    }

    /// Trailing corrections as an `f64` complex value.
    #[inline]
    pub fn lo_c64(self) -> Complex64 {
        Complex64::new(self.re.lo, self.im.lo)
    }

    /// Approximate modulus (leading parts only).
    #[inline]
    pub fn norm_f64(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    /// Complex exponential.
    pub fn exp(self) -> Cdd {
        let ex = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cdd {
            re: ex * c,
            im: ex * s,
        }
    }

    /// Complex hyperbolic sine.
    pub fn sinh(self) -> Cdd {
        let e = self.exp();
        let ei = (-self).exp();
        (e - ei).scale(0.5)
    }

    /// Complex hyperbolic cosine.
    pub fn cosh(self) -> Cdd {
        let e = self.exp();
        let ei = (-self).exp();
        (e + ei).scale(0.5)
    }

    /// Multiplication by an exact real scalar.
    #[inline]
    pub fn scale(self, s: f64) -> Cdd {
        Cdd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    /// Complex conjugate.
    #[inline]
    pub fn conj(self) -> Cdd {
        Cdd {
            re: self.re,
            im: -self.im,
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    #[inline]
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    #[inline]
    fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Neg for Cdd {
    type Output = Cdd;
    #[inline]
    fn neg(self) -> Cdd {
        Cdd {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    #[inline]
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    #[inline]
    fn div(self, o: Cdd) -> Cdd {
        let den = o.re * o.re + o.im * o.im;
        let num = self * o.conj();
        Cdd {
            re: num.re / den,
            im: num.im / den,
        }
    }
}
