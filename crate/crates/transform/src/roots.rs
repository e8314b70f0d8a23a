//! Papkovich–Fadle eigenvalues: first-quadrant roots of `sinh²s = s²`.
//!
//! The equation factors into the two families `sinh s = ±s`; the roots of
//! either family come in complex-conjugate, sign-symmetric quadruples, so
//! only the open first quadrant is enumerated.  Asymptotically the roots of
//! `sinh s = σs` sit near `s ≈ ln((4m+σ)π) + i(4m+σ)π/2`; those estimates
//! seed an `f64` Newton iteration which a double-double polish then refines
//! to ~28+ digits.

use crate::dd::{Cdd, Dd};
use num_complex::Complex64;
use std::f64::consts::PI;

/// First-quadrant eigenvalues sorted by modulus, as double-double pairs.
///
/// Panics if a Newton iteration fails to converge or a root leaves the open
/// first quadrant — both would indicate a broken seed, not bad data.
pub fn pf_roots_dd(count: usize) -> Vec<Cdd> {
    let mut out: Vec<Cdd> = Vec::new();
    let mut m = 1u32;
    while out.len() < count + 4 {
        for sgn in [1.0f64, -1.0] {
            let off = f64::from(4 * m) + sgn;
            let mut s = Complex64::new((off * PI).ln(), off * PI / 2.0);
            let mut converged = false;
            for _ in 0..60 {
                let step = (s.sinh() - sgn * s) / (s.cosh() - sgn);
                s -= step;
                if step.norm() < 1e-12 * s.norm() {
                    converged = true;
                    break;
                }
            }
            assert!(converged, "f64 Newton stalled for family {sgn} at m={m}");
            let mut sd = Cdd::from_c64(s);
            let sg = Dd::from_f64(sgn);
            for _ in 0..4 {
                let num = sd.sinh()
                    - Cdd {
                        re: sg * sd.re,
                        im: sg * sd.im,
                    };
                let den = sd.cosh()
                    - Cdd {
                        re: sg,
                        im: Dd::from_f64(0.0),
                    };
                sd = sd - num / den;
            }
            assert!(
                sd.re.hi > 0.0 && sd.im.hi > 0.0,
                "root escaped the first quadrant at m={m}, family {sgn}"
            );
            assert!(
                root_residual(sd) < 1e-24,
                "root polish failed at m={m}, family {sgn}: residual {}",
                root_residual(sd)
            );
            out.push(sd);
        }
        m += 1;
    }
    out.sort_by(|a, b| {
        a.norm_f64()
            .partial_cmp(&b.norm_f64())
            .expect("finite moduli")
    });
    out.truncate(count);
    out
}

/// First-quadrant eigenvalues sorted by modulus, rounded to `f64`.
pub fn pf_roots(count: usize) -> Vec<Complex64> {
    pf_roots_dd(count).into_iter().map(Cdd::to_c64).collect()
}

/// `|sinh²s − s²|` evaluated in double-double arithmetic.
pub fn root_residual(s: Cdd) -> f64 {
    let sh = s.sinh();
    (sh * sh - s * s).norm_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_roots_match_reference_values() {
        // Reference double-double pairs from 50-digit Newton refinement.
        let roots = pf_roots_dd(4);
        let refs = [
            (
                (2.2507286116018603, 2.13368068132481e-16),
                (4.212392230490661, -9.294743358886429e-17),
            ),
            (
                (2.7686782829873215, -1.5852067481654327e-17),
                (7.497676277776385, 2.641528088977181e-16),
            ),
            (
                (3.1031487458252496, 6.800720819538818e-17),
                (10.712537397279261, -8.21671155842481e-16),
            ),
            (
                (3.352209884853505, -1.2928954956904865e-18),
                (13.899959713976465, -5.681452010945458e-16),
            ),
        ];
        for (got, ((re_hi, re_lo), (im_hi, im_lo))) in roots.iter().zip(refs) {
            let dre = (got.re - Dd::new(re_hi, re_lo)).hi.abs();
            let dim = (got.im - Dd::new(im_hi, im_lo)).hi.abs();
            assert!(dre < 1e-27 && dim < 1e-27, "root off by ({dre}, {dim})");
        }
    }

    #[test]
    fn residuals_stay_at_double_double_level() {
        for s in pf_roots_dd(24) {
            assert!(root_residual(s) < 1e-24);
        }
    }

    #[test]
    fn roots_are_sorted_first_quadrant_and_distinct() {
        let roots = pf_roots(24);
        assert_eq!(roots.len(), 24);
        for w in roots.windows(2) {
            assert!(w[0].norm() < w[1].norm());
            assert!((w[0] - w[1]).norm() > 1.0);
        }
        for s in &roots {
            assert!(s.re > 0.0 && s.im > 0.0);
        }
        // Interleaving: consecutive imaginary parts step by about π.
        for w in roots.windows(2) {
            let step = w[1].im - w[0].im;
            assert!(step > 2.0 && step < 4.5, "imag step {step}");
        }
    }
}
