//! Scene-level checks: contour diagnostics, superposition, grid sampling,
//! and streamline tracing.

mod common;

use common::{assert_c_close, assert_small};
use num_complex::Complex64;
use std::f64::consts::PI;
use stokes_lattice_core::{
    sample_grid, trace_streamline, GridSpec64, Scene64, SingularityKind64, Termination,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn channel_scene(
    kind: SingularityKind64,
    z0: Complex64,
    h: f64,
    eta: f64,
) -> Scene64 {
    Scene64::channel(2.0 * PI, h, &[(kind, z0)], eta, 1e-12)
        .unwrap()
        .0
}

#[test]
fn stokeslet_force_is_minus_8_pi_eta_mu() {
    let z0 = c(PI, 1.0);
    for mu in [c(1.0, 0.0), c(0.0, 1.0), c(2.0, 1.0)] {
        for eta in [1.0, 3.5] {
            let scene = channel_scene(SingularityKind64::Stokeslet(mu), z0, 2.0, eta);
            let (force, flux) = scene.contour_diagnostics(z0, 0.5, 256).unwrap();
            let expect = mu * (-8.0 * PI * eta);
            assert_c_close(force, expect, 1e-10, "force = -8 pi eta mu");
            assert_small(flux, 1e-10, "mass flux");
        }
    }
}

#[test]
fn non_stokeslet_kinds_are_force_free() {
    let z0 = c(PI, 1.0);
    let mu = c(0.7, 0.4);
    for kind in [
        SingularityKind64::Stresslet(mu),
        SingularityKind64::ForceQuadrupole(mu),
        SingularityKind64::SourceDipole(mu),
        SingularityKind64::SourceQuadrupole(mu),
    ] {
        let scene = channel_scene(kind, z0, 2.0, 1.0);
        let (force, flux) = scene.contour_diagnostics(z0, 0.5, 256).unwrap();
        assert_small(force.norm(), 1e-10, "force");
        assert_small(flux, 1e-10, "mass flux");
    }
}

#[test]
fn contour_is_radius_and_image_independent() {
    let z0 = c(PI, 1.0);
    let scene = channel_scene(SingularityKind64::Stokeslet(c(2.0, 1.0)), z0, 2.0, 1.0);
    let (f1, q1) = scene.contour_diagnostics(z0, 0.3, 256).unwrap();
    let (f2, q2) = scene.contour_diagnostics(z0, 0.8, 256).unwrap();
    assert_c_close(f2, f1, 1e-12, "radius independence of force");
    assert_small(q1 - q2, 1e-12, "radius independence of flux");
    // A contour around the next periodic image reports the same force.
    let (f3, _) = scene
        .contour_diagnostics(z0 + c(2.0 * PI, 0.0), 0.3, 256)
        .unwrap();
    assert_c_close(f3, f1, 1e-12, "periodic image independence");
    // A contour enclosing no singularity reports zero.
    let (f4, q4) = scene.contour_diagnostics(c(1.0, 0.4), 0.25, 256).unwrap();
    assert_small(f4.norm(), 1e-11, "empty contour force");
    assert_small(q4, 1e-11, "empty contour flux");
}

#[test]
fn contour_contract_violations() {
    let z0 = c(PI, 1.0);
    let scene = channel_scene(SingularityKind64::Stokeslet(c(1.0, 0.0)), z0, 2.0, 1.0);
    // Too few samples.
    assert!(scene.contour_diagnostics(z0, 0.5, 32).is_err());
    // Crosses the bottom wall.
    assert!(scene.contour_diagnostics(c(PI, 0.2), 0.5, 256).is_err());
    // Crosses the top wall.
    assert!(scene.contour_diagnostics(c(PI, 1.8), 0.5, 256).is_err());
    // Passes through the singularity.
    assert!(scene
        .contour_diagnostics(c(PI, 1.0) + c(0.5, 0.0), 0.5, 256)
        .is_err());
}

#[test]
fn superposition_is_linear() {
    let a = (SingularityKind64::Stokeslet(c(1.0, -0.5)), c(2.0, 0.8));
    let b = (SingularityKind64::SourceDipole(c(0.3, 0.9)), c(4.5, 1.4));
    let both = Scene64::channel(2.0 * PI, 2.0, &[a, b], 1.0, 1e-12).unwrap().0;
    let only_a = Scene64::channel(2.0 * PI, 2.0, &[a], 1.0, 1e-12).unwrap().0;
    let only_b = Scene64::channel(2.0 * PI, 2.0, &[b], 1.0, 1e-12).unwrap().0;
    for &z in &[c(0.7, 0.3), c(3.3, 1.7), c(5.9, 1.0)] {
        let w = both.velocity(z).unwrap();
        let ws = only_a.velocity(z).unwrap() + only_b.velocity(z).unwrap();
        assert_c_close(w, ws, 1e-14, "superposition");
    }
    // The combined force is the stokeslet's alone.
    let (force, _) = both.contour_diagnostics(c(2.0, 0.8), 0.45, 256).unwrap();
    assert_c_close(force, c(1.0, -0.5) * (-8.0 * PI), 1e-10, "combined force");
}

#[test]
fn physical_frame_scaling() {
    // Same canonical problem expressed at period 4π: velocities match the
    // canonical scene at corresponding points, pressure picks up the factor
    // c = 1/2.
    let mu = c(0.7, 0.4);
    let canon = channel_scene(SingularityKind64::Stresslet(mu), c(PI, 1.0), 2.0, 1.0);
    // Physical: period 4π, height 4, singularity at (2π, 2); the stresslet
    // strength must be divided by c = ½ to represent the same physical
    // object... here instead supply μ/c so the canonical strength is μ.
    let phys = Scene64::channel(
        4.0 * PI,
        4.0,
        &[(SingularityKind64::Stresslet(mu * 2.0), c(2.0 * PI, 2.0))],
        1.0,
        1e-12,
    )
    .unwrap()
    .0;
    let zc = c(2.0, 0.7);
    let zp = zc * 2.0;
    let sc = canon.sample(zc).unwrap();
    let sp = phys.sample_physical(zp).unwrap();
    assert_small(sp.u - sc.u, 1e-12, "u invariant");
    assert_small(sp.v - sc.v, 1e-12, "v invariant");
    assert_small(sp.p_over_eta - 0.5 * sc.p_over_eta, 1e-12, "p scales by c");
    assert_small(sp.omega - 0.5 * sc.omega, 1e-12, "omega scales by c");
}

#[test]
fn grid_layout_masking_and_walls() {
    let z0 = c(PI, 1.0);
    let mut scene = channel_scene(SingularityKind64::Stokeslet(c(0.0, 1.0)), z0, 2.0, 1.0);
    scene.exclusion_radius = 0.3;
    let spec = GridSpec64 {
        x0: 0.0,
        x1: 2.0 * PI,
        nx: 25,
        y0: 0.0,
        y1: 2.0,
        ny: 9,
    };
    let rows = sample_grid(&scene, &spec).unwrap();
    assert_eq!(rows.len(), 25 * 9);
    // Row-major with y outer: the first 25 nodes share y = 0.
    assert!(rows[..25].iter().all(|r| r.y == 0.0));
    assert_eq!(rows[25].y, 0.25);
    assert_eq!(rows[0].x, 0.0);
    assert_eq!(rows[24].x, 2.0 * PI);
    // Wall rows evaluate (not masked) and are no-slip small.
    for r in rows.iter().take(25) {
        assert!(!r.masked);
        assert!(r.sample.u.abs() < 1e-11 && r.sample.v.abs() < 1e-11);
    }
    // Masked nodes are exactly those within the exclusion radius of the
    // singularity, and their samples are zeroed, never NaN.
    let mut masked_count = 0usize;
    for r in &rows {
        let d = stokes_lattice_core::periodic_distance(c(r.x, r.y), z0);
        assert_eq!(r.masked, d < 0.3, "mask decision at ({}, {})", r.x, r.y);
        if r.masked {
            masked_count += 1;
            assert_eq!(r.sample.u, 0.0);
            assert_eq!(r.sample.v, 0.0);
            assert_eq!(r.sample.p_over_eta, 0.0);
            assert_eq!(r.sample.omega, 0.0);
        } else {
            assert!(r.sample.is_finite());
        }
    }
    assert!(masked_count > 0, "the grid should intersect the exclusion disc");
}

#[test]
fn grid_contract_violations() {
    let scene = channel_scene(SingularityKind64::Stokeslet(c(1.0, 0.0)), c(PI, 1.0), 2.0, 1.0);
    let bad_nx = GridSpec64 {
        x0: 0.0,
        x1: 1.0,
        nx: 0,
        y0: 0.1,
        y1: 1.0,
        ny: 3,
    };
    assert!(sample_grid(&scene, &bad_nx).is_err());
    let above = GridSpec64 {
        x0: 0.0,
        x1: 1.0,
        nx: 3,
        y0: 0.1,
        y1: 2.5,
        ny: 3,
    };
    assert!(sample_grid(&scene, &above).is_err());
    let below = GridSpec64 {
        x0: 0.0,
        x1: 1.0,
        nx: 3,
        y0: -0.2,
        y1: 1.0,
        ny: 3,
    };
    assert!(sample_grid(&scene, &below).is_err());
}

#[test]
fn mirror_symmetry_for_real_strength() {
    // A real-strength stokeslet at x₀ = π gives u even and v odd about the
    // line x = π: w(2π − x + iy) = conj(w(x + iy)).
    let scene = channel_scene(SingularityKind64::Stokeslet(c(1.0, 0.0)), c(PI, 1.0), 2.0, 1.0);
    for &z in &[c(1.0, 0.5), c(2.2, 1.3), c(0.4, 1.9)] {
        let w = scene.velocity(z).unwrap();
        let wm = scene.velocity(c(2.0 * PI - z.re, z.im)).unwrap();
        assert_c_close(wm, w.conj(), 1e-13, "mirror symmetry");
    }
}

#[test]
fn streamline_wall_seed_is_empty() {
    let scene = channel_scene(SingularityKind64::Stokeslet(c(0.0, 1.0)), c(PI, 1.0), 2.0, 1.0);
    let s = trace_streamline(&scene, c(1.0, 0.0), 1e-2, 100).unwrap();
    assert!(s.points.is_empty());
    assert_eq!(s.termination, Termination::WallContact);
    // Seeding outside the domain errors instead.
    assert!(trace_streamline(&scene, c(1.0, -0.5), 1e-2, 100).is_err());
    assert!(trace_streamline(&scene, c(1.0, 1.0), 0.0, 100).is_err());
}

#[test]
fn streamline_stays_in_domain_and_respects_budget() {
    let scene = channel_scene(SingularityKind64::Stokeslet(c(0.0, 1.0)), c(PI, 1.0), 2.0, 1.0);
    let s = trace_streamline(&scene, c(1.5, 0.8), 5e-3, 4000).unwrap();
    assert!(!s.points.is_empty());
    for &(x, y) in &s.points {
        assert!(x.is_finite() && y.is_finite());
        assert!((0.0..=2.0).contains(&y), "stayed inside the channel");
    }
    match s.termination {
        Termination::StepBudget | Termination::ClosedOrbit => {}
        other => panic!("unexpected termination {other:?} after {} pts", s.points.len()),
    }
}

#[test]
fn streamline_finds_closed_orbit() {
    // A vertical-force stokeslet drives recirculating cells; at least one of
    // these seeds must close on itself.
    let scene = channel_scene(
        SingularityKind64::Stokeslet(c(0.0, 1.0)),
        c(PI, -(0.7f64.ln())),
        1.9,
        1.0,
    );
    let mut closed = 0usize;
    for &seed in &[c(2.0, 0.9), c(1.5, 1.0), c(4.5, 0.9), c(2.5, 1.2)] {
        let s = trace_streamline(&scene, seed, 5e-3, 60_000).unwrap();
        if s.termination == Termination::ClosedOrbit {
            closed += 1;
            // Closure quality: the final point returned near the seed.
            let (x, y) = *s.points.last().unwrap();
            let d = stokes_lattice_core::periodic_distance(c(x, y), seed);
            assert!(d < 5e-3, "closure distance {d:e}");
        }
    }
    assert!(closed > 0, "no closed orbit found from any seed");
}

#[test]
fn halfplane_scene_evaluates() {
    let (scene, report) = Scene64::halfplane(
        2.0 * PI,
        &[(SingularityKind64::Stresslet(c(0.7, 0.4)), c(PI, 0.8))],
        1.0,
    )
    .unwrap();
    assert_eq!(report.len(), 1);
    assert_eq!(report[0].factor, 1.0);
    let s = scene.sample(c(1.3, 0.5)).unwrap();
    assert_small(s.u - 2.4748180402244396e-1, 1e-13, "u");
    assert_small(s.v - (-1.7241858186456965e-1), 1e-13, "v");
    // Unbounded above: tall evaluations fine, below-wall rejected.
    assert!(scene.velocity(c(1.0, 30.0)).is_ok());
    assert!(scene.velocity(c(1.0, -0.1)).is_err());
}
