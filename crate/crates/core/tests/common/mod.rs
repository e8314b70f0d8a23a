//! Shared assertion helpers for the integration tests.
#![allow(dead_code)]

use stokes_lattice_core::C64;

/// Asserts complex closeness relative to `|want|` (absolute when `want ≈ 0`).
pub fn assert_c_close(got: C64, want: C64, rel: f64, what: &str) {
    let scale = want.norm().max(1.0);
    let err = (got - want).norm() / scale;
    assert!(
        err <= rel,
        "{what}: got {got}, want {want} (rel err {err:.3e} > {rel:.1e})"
    );
}

/// Asserts real closeness relative to `max(|want|, 1)`.
pub fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
    let scale = want.abs().max(1.0);
    let err = (got - want).abs() / scale;
    assert!(
        err <= rel,
        "{what}: got {got}, want {want} (rel err {err:.3e} > {rel:.1e})"
    );
}

/// Asserts absolute smallness.
pub fn assert_small(got: f64, tol: f64, what: &str) {
    assert!(got.abs() <= tol, "{what}: |{got:e}| > {tol:e}");
}
