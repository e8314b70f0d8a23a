//! Half-plane closed-form solution checks against independently computed
//! reference values.

mod common;

use common::{assert_c_close, assert_small};
use num_complex::Complex64;
use std::f64::consts::PI;
use stokes_lattice_core::{HalfPlaneSolution64, SingularityKind64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn stresslet_reference_field() {
    let sol = HalfPlaneSolution64::build(
        SingularityKind64::Stresslet(c(0.7, 0.4)),
        c(PI, 0.8),
    )
    .unwrap();
    assert_c_close(
        sol.velocity(c(1.3, 0.5)),
        c(2.4748180402244396e-1, 1.7241858186456965e-1),
        1e-13,
        "stresslet velocity",
    );
}

#[test]
fn source_quadrupole_reference_field() {
    let sol = HalfPlaneSolution64::build(
        SingularityKind64::SourceQuadrupole(c(0.6, 0.8)),
        c(PI, 0.9),
    )
    .unwrap();
    assert_c_close(
        sol.velocity(c(4.0, 1.2)),
        c(-2.3819610004937357, -3.8595231076241227e-1),
        1e-13,
        "source quadrupole velocity",
    );
}

#[test]
fn no_slip_on_the_wall() {
    let mu = c(0.7, 0.4);
    for kind in SingularityKind64::all(mu) {
        // The last position hugs the wall; its near fields are ~30 in
        // magnitude, so the absolute bound is proportionally looser there
        // (still ~4e−15 relative).
        for (z0, tol) in [
            (c(PI, 0.8), 1e-13),
            (c(PI, -(0.7f64.ln())), 1e-13),
            (c(1.0, 0.3), 3e-13),
        ] {
            let sol = HalfPlaneSolution64::build(kind, z0).unwrap();
            let mut worst: f64 = 0.0;
            for j in 0..512 {
                let x = 2.0 * PI * j as f64 / 512.0;
                worst = worst.max(sol.velocity(c(x, 0.0)).norm());
            }
            assert!(
                worst <= tol,
                "{} z0={z0}: wall speed {worst:.3e}",
                kind.name()
            );
        }
    }
}

#[test]
fn far_field_limits() {
    // High above the wall every kind settles to a constant streaming
    // velocity: zero for the quadrupoles and the source dipole, −2·Im μ for
    // the stresslet (its pumping component drags fluid along the wall), and
    // a nonzero force-dependent constant for the stokeslet.
    let mu = c(0.7, 0.4);
    for kind in SingularityKind64::all(mu) {
        let sol = HalfPlaneSolution64::build(kind, c(PI, 0.8)).unwrap();
        let w12 = sol.velocity(c(1.0, 12.0));
        let w13 = sol.velocity(c(4.0, 13.0));
        assert!(
            (w12 - w13).norm() < 1e-3,
            "{}: far field not settling ({w12} vs {w13})",
            kind.name()
        );
        match kind {
            SingularityKind64::Stokeslet(_) => {}
            SingularityKind64::Stresslet(_) => {
                assert!(
                    (w13 - c(-2.0 * mu.im, 0.0)).norm() < 5e-3,
                    "stresslet streaming limit: got {w13}, want {}",
                    -2.0 * mu.im
                );
            }
            _ => assert!(
                w13.norm() < 1e-3,
                "{} far field decays, got {:e}",
                kind.name(),
                w13.norm()
            ),
        }
    }
}

#[test]
fn stokeslet_image_constants() {
    // μ = 1 at ζ₀ = −0.7: the image log strength is κ = μ̄ log|ζ₀|² and the
    // additive constant −κ cancels it on the wall.
    let z0 = c(PI, -(0.7f64.ln()));
    let sol = HalfPlaneSolution64::build(SingularityKind64::Stokeslet(c(1.0, 0.0)), z0).unwrap();
    let kap = 0.49f64.ln();
    assert_c_close(sol.m_f, c(1.0, 0.0), 1e-15, "m_f");
    assert_c_close(sol.m_g, c(-1.0, 0.0), 1e-15, "m_g");
    assert_eq!(sol.qf.len(), 1);
    assert_eq!(sol.qf[0].0, 1);
    assert_c_close(sol.qf[0].1, c(kap, 0.0), 1e-14, "kappa");
    assert_c_close(sol.c_f, c(-kap, 0.0), 1e-14, "additive constant");
    assert_eq!(sol.pg.len(), 1);
    assert_c_close(sol.pg[0].1, c(-0.7 * kap, 0.0), 1e-14, "conj(kappa) zeta0");
}

#[test]
fn stresslet_image_constants() {
    // μ = 1 at z₀ = π + i: image pole strengths (β, γ) = (3i, −2i) and the
    // boundary constants ∓i.
    let sol =
        HalfPlaneSolution64::build(SingularityKind64::Stresslet(c(1.0, 0.0)), c(PI, 1.0))
            .unwrap();
    assert_eq!(sol.qf.len(), 2);
    assert_c_close(sol.qf[0].1, c(0.0, 3.0), 1e-15, "beta = i(2Y+1)");
    assert_c_close(sol.qf[1].1, c(0.0, -2.0), 1e-15, "gamma = -2iY");
    assert_c_close(sol.c_f, c(0.0, -1.0), 1e-15, "c_f = -i mub");
    assert_c_close(sol.c_g, c(0.0, 1.0), 1e-15, "c_g = +i mub");
    assert_eq!(sol.qg.len(), 1);
    assert_c_close(sol.qg[0].1, c(0.0, -1.0), 1e-15, "qg");
}

#[test]
fn wall_position_is_rejected() {
    assert!(
        HalfPlaneSolution64::build(SingularityKind64::Stokeslet(c(1.0, 0.0)), c(1.0, 0.0))
            .is_err()
    );
    assert!(
        HalfPlaneSolution64::build(SingularityKind64::Stokeslet(c(1.0, 0.0)), c(1.0, -0.4))
            .is_err()
    );
}

#[test]
fn periodicity_in_x() {
    let sol = HalfPlaneSolution64::build(
        SingularityKind64::ForceQuadrupole(c(0.6, 0.8)),
        c(PI, 0.9),
    )
    .unwrap();
    for &z in &[c(0.3, 0.4), c(2.0, 1.5), c(5.9, 0.2)] {
        let d = (sol.velocity(z + c(2.0 * PI, 0.0)) - sol.velocity(z)).norm();
        assert_small(d, 1e-13, "periodic image agreement");
    }
}
