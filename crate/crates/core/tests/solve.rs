//! Coefficient-solve checks against independently computed reference values.

mod common;

use common::{assert_c_close, assert_close, assert_small};
use num_complex::Complex64;
use std::f64::consts::PI;
use stokes_lattice_core::channel_series::denom_d;
use stokes_lattice_core::{ChannelGeometry64, ChannelSolution64, SingularityKind64};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// μ = 1 stokeslet with ζ₀ = 0.6 in an h = π channel: every quantity is
/// real, and the values below were computed independently with an
/// extended-precision solver.
#[test]
fn stokeslet_reference_coefficients() {
    let z0 = c(0.0, -(0.6f64.ln()));
    let geom = ChannelGeometry64::canonical(PI).unwrap();
    let sol =
        ChannelSolution64::build(SingularityKind64::Stokeslet(c(1.0, 0.0)), z0, &geom, 1e-12)
            .unwrap();

    assert_eq!(sol.n_terms, 75, "sized truncation");
    assert!(sol.residual <= 1e-14, "residual {:.3e}", sol.residual);
    assert_close(sol.coeffs.a, -1.6260084616071638e-1, 1e-14, "a");
    assert_c_close(sol.coeffs.g0, c(0.0, 0.0), 1e-15, "G0 = d0");
    assert_c_close(sol.forcing.e0, c(-2.0433024950639629, 0.0), 1e-14, "e0");
    assert_c_close(sol.coeffs.f_n[0], c(-1.1538835923465418e-1, 0.0), 1e-13, "F1");
    assert_c_close(sol.coeffs.g_n[0], c(-6.1576743644607113e-1, 0.0), 1e-13, "G1");
    assert_c_close(sol.coeffs.h_n[0], c(-3.6486940040541405e-1, 0.0), 1e-13, "H1");
    assert_c_close(sol.coeffs.k_n[0], c(-2.3695516358975670, 0.0), 1e-13, "K1");
    assert_c_close(sol.coeffs.f_n[1], c(-1.8849126984387402e-1, 0.0), 1e-13, "F2");

    // The constant-mode identity e0 = d0 − 2a·log ρ² ties a to the forcing.
    let l = -2.0 * PI;
    assert_close(
        (sol.forcing.d0 - sol.forcing.e0).re,
        2.0 * sol.coeffs.a * l,
        1e-13,
        "constant-mode identity",
    );
}

/// Complex-strength stresslet at z₀ = π + i in an h = 2 channel.
#[test]
fn stresslet_reference_coefficients_and_field() {
    let geom = ChannelGeometry64::canonical(2.0).unwrap();
    let sol = ChannelSolution64::build(
        SingularityKind64::Stresslet(c(0.7, 0.4)),
        c(PI, 1.0),
        &geom,
        1e-12,
    )
    .unwrap();

    assert_eq!(sol.n_terms, 37, "sized truncation");
    assert!(sol.residual <= 1e-14, "residual {:.3e}", sol.residual);
    assert_close(sol.coeffs.a, 0.1, 1e-14, "a = Im mu / (2h) here");
    assert_c_close(
        sol.coeffs.f_n[0],
        c(8.3542231970418712e-2, 6.6395152230678844e-1),
        1e-13,
        "F1",
    );
    assert_c_close(
        sol.coeffs.k_n[2],
        c(-1.1794811965511867, -2.1915406528760784),
        1e-13,
        "K3",
    );

    let z = c(2.0, 0.7);
    assert_c_close(
        sol.velocity(z),
        c(3.6518852175119493e-1, 9.1368639064977941e-2),
        1e-12,
        "velocity",
    );
    assert_c_close(
        sol.four_f_prime(z),
        c(-2.6841074095898096, -2.2450145287000522e-1),
        1e-12,
        "pressure/vorticity combination",
    );
}

#[test]
fn zero_strength_builds_zero_field() {
    let geom = ChannelGeometry64::canonical(2.0).unwrap();
    let sol = ChannelSolution64::build(
        SingularityKind64::SourceDipole(c(0.0, 0.0)),
        c(PI, 1.0),
        &geom,
        1e-12,
    )
    .unwrap();
    assert_small(sol.velocity(c(1.0, 0.5)).norm(), 0.0, "velocity of mu = 0");
    assert_small(sol.four_f_prime(c(1.0, 0.5)).norm(), 0.0, "4f' of mu = 0");
}

#[test]
fn all_kinds_build_with_small_residual() {
    let mu = c(0.7, 0.4);
    for h in [PI / 2.0, 2.0, PI, 2.0 * PI] {
        let geom = ChannelGeometry64::canonical(h).unwrap();
        for kind in SingularityKind64::all(mu) {
            for z0 in [c(PI, h / 2.0), c(PI, -(0.7f64.ln()))] {
                let sol = ChannelSolution64::build(kind, z0, &geom, 1e-12).unwrap();
                assert!(
                    sol.residual <= 1e-13,
                    "{} h={h} z0={z0}: residual {:.3e}",
                    kind.name(),
                    sol.residual
                );
                // Denominator positivity for every retained harmonic.
                for n in 1..=sol.n_terms {
                    let d = denom_d(n as f64 * h);
                    assert!(d > 0.0, "denominator at n={n}, h={h}: {d:e}");
                }
            }
        }
    }
}

#[test]
fn denominator_has_no_overflow_for_deep_channels() {
    // s = n·h can reach tens of thousands at the truncation order of a deep
    // channel; the evaluation must neither overflow nor go negative.
    for s in [1e-3f64, 0.1, 1.0, 10.0, 39.9, 40.1, 100.0, 1e3, 1e4] {
        let d: f64 = denom_d(s);
        assert!(d.is_finite() && d > 0.0, "denom at s={s}: {d:e}");
    }
    // Growth check near the switch point: continuous to ~1e-12 relative.
    let below: f64 = denom_d(39.999999);
    let above: f64 = denom_d(40.000001);
    assert!(
        ((below - above) / above).abs() < 1e-6,
        "switch-point continuity: {below:e} vs {above:e}"
    );
}

#[test]
fn fixed_truncation_matches_sized_build() {
    let geom = ChannelGeometry64::canonical(2.0).unwrap();
    let kind = SingularityKind64::Stresslet(c(0.7, 0.4));
    let auto = ChannelSolution64::build(kind, c(PI, 1.0), &geom, 1e-12).unwrap();
    let fixed =
        ChannelSolution64::build_with_terms(kind, c(PI, 1.0), &geom, 1e-12, 60).unwrap();
    assert_eq!(fixed.n_terms, 60);
    // The per-harmonic solves are decoupled, so shared harmonics agree
    // exactly.
    for n in 0..auto.n_terms {
        assert_c_close(fixed.coeffs.f_n[n], auto.coeffs.f_n[n], 1e-15, "F_n agree");
        assert_c_close(fixed.coeffs.k_n[n], auto.coeffs.k_n[n], 1e-15, "K_n agree");
    }
    let z = c(2.0, 0.7);
    assert_c_close(fixed.velocity(z), auto.velocity(z), 1e-13, "fields agree");
}

#[test]
fn truncation_grows_with_proximity_to_wall() {
    let geom = ChannelGeometry64::canonical(2.0).unwrap();
    let kind = SingularityKind64::Stokeslet(c(1.0, 0.0));
    let mid = ChannelSolution64::build(kind, c(PI, 1.0), &geom, 1e-12).unwrap();
    let near = ChannelSolution64::build(kind, c(PI, 0.05), &geom, 1e-12).unwrap();
    assert!(
        near.n_terms > mid.n_terms,
        "wall-hugging singularity needs more harmonics ({} vs {})",
        near.n_terms,
        mid.n_terms
    );
    assert!(near.residual <= 1e-13);
}

#[test]
fn invalid_build_inputs_are_rejected() {
    let geom = ChannelGeometry64::canonical(2.0).unwrap();
    let kind = SingularityKind64::Stokeslet(c(1.0, 0.0));
    assert!(ChannelSolution64::build(kind, c(PI, 1.0), &geom, 0.0).is_err());
    assert!(ChannelSolution64::build(kind, c(PI, 1.0), &geom, -1e-12).is_err());
    assert!(ChannelSolution64::build(kind, c(PI, 1.0), &geom, f64::NAN).is_err());
    assert!(ChannelSolution64::build(kind, c(PI, f64::NAN), &geom, 1e-12).is_err());
    assert!(
        ChannelSolution64::build_with_terms(kind, c(PI, 1.0), &geom, 1e-12, 0).is_err(),
        "zero harmonics rejected"
    );
}
