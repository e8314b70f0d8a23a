//! Collocation-solve diagnostics: system shape, rank, conditioning, and
//! stability of the solved quantities under truncation refinement.

use num_complex::Complex64 as C64;
use stokes_lattice_core::SingularityKind64;
use stokes_lattice_transform::TransformSystem;

const Z0: C64 = C64::new(std::f64::consts::PI, 1.0);
const H: f64 = 2.0;

fn solved(kind: &SingularityKind64, m_cheb: usize, n_colloc: usize) -> TransformSystem {
    let mut sys = TransformSystem::new(kind, Z0, H, m_cheb, n_colloc).unwrap();
    sys.solve().unwrap();
    sys
}

#[test]
fn collocation_system_is_full_rank_and_well_conditioned() {
    let kind = SingularityKind64::Stokeslet(C64::new(0.7, 0.4));
    let sys = solved(&kind, 20, 24);
    let d = &sys.diag;
    // 24 eigenvalues × {k, conj k} × {Re, Im} + 4 zero-wavenumber Taylor rows
    // + 3 gauge rows; unknowns 4·20 + 2.
    assert_eq!(d.shape, (103, 82));
    assert_eq!(d.rank, 82, "column rank must be full");
    assert!(
        d.condition > 1e3 && d.condition < 1e8,
        "condition number {:.3e} outside the expected window",
        d.condition
    );
    assert!(
        d.residual < 1e-12,
        "least-squares residual {:.3e} too large",
        d.residual
    );
}

#[test]
fn solved_quantities_stabilise_under_refinement() {
    let kind = SingularityKind64::Stresslet(C64::new(0.8, -0.3));
    let lo = solved(&kind, 14, 18);
    let hi = solved(&kind, 24, 28);

    let d_drift = (lo.d_solved() - hi.d_solved()).norm();
    let scale = hi.d_solved().norm();
    println!("d drift {:.3e} (scale {:.3e})", d_drift, scale);
    assert!(d_drift <= 1e-9 * scale.max(1.0), "d drift {:.3e}", d_drift);

    // Left-edge functions at interior heights.
    let mut worst_f = 0.0f64;
    let mut worst_g = 0.0f64;
    for i in 1..8 {
        let y = H * i as f64 / 8.0;
        worst_f = worst_f.max((lo.fr_left(y) - hi.fr_left(y)).norm());
        worst_g = worst_g.max((lo.gp_left(y) - hi.gp_left(y)).norm());
    }
    println!("left-edge drift f {:.3e} g' {:.3e}", worst_f, worst_g);
    assert!(worst_f <= 1e-7, "f_R drift {:.3e}", worst_f);
    assert!(worst_g <= 1e-6, "g'_R drift {:.3e}", worst_g);
}

#[test]
fn spectral_combination_vanishes_at_collocation_points() {
    // After the solve, rebuild the system rows and confirm the solved vector
    // annihilates them (an independent re-assembly, not the solver residual).
    let kind = SingularityKind64::Stokeslet(C64::new(-0.3, 1.1));
    let sys = solved(&kind, 16, 20);
    let (a, b) = sys.real_system();
    let x = nalgebra::DVector::from_column_slice(&sys.x);
    let r = &a * &x - &b;
    let worst = r.amax();
    println!("re-assembled residual {:.3e}", worst);
    assert!(worst < 1e-11, "residual {:.3e}", worst);
}
