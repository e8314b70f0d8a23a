//! Prints the oracle-vs-series comparison numbers used to freeze the
//! integration-test tolerances. Not part of the shipped API.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes_lattice_core::{ChannelGeometry64, ChannelSolution64, SingularityKind64};
use stokes_lattice_transform::{OracleParams, RayOracle, TransformSystem};

fn grid(h: f64) -> Vec<C64> {
    let l = std::f64::consts::TAU;
    let nx = 20;
    let ny = 10;
    let mut pts = Vec::new();
    for i in 0..nx {
        let x = 0.45 + (l - 0.9) * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let y = 0.35 + (h - 0.7) * j as f64 / (ny - 1) as f64;
            pts.push(C64::new(x, y));
        }
    }
    pts
}

fn compare(kind: SingularityKind64, label: &str) {
    let h = 2.0;
    let z0 = C64::new(std::f64::consts::PI, 1.0);
    let t0 = std::time::Instant::now();
    let oracle = RayOracle::new(&kind, z0, h, OracleParams::default()).unwrap();
    let build_t = t0.elapsed().as_secs_f64();
    let geom = ChannelGeometry64::canonical(h).unwrap();
    let series = ChannelSolution64::build(kind, z0, &geom, 1e-12).unwrap();

    let diag = &oracle.sys.diag;
    println!(
        "[{label}] solve: shape {:?} rank {} cond {:.3e} residual {:.3e} ({build_t:.2}s)",
        diag.shape, diag.rank, diag.condition, diag.residual
    );
    println!(
        "[{label}] K1 = {:.6e} + {:.6e} i",
        oracle.k1c.re, oracle.k1c.im
    );

    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for &z in &grid(h) {
        if (z - z0).norm() < 0.2 {
            continue;
        }
        let wo = oracle.velocity(z);
        let ws = series.velocity(z);
        worst = worst.max((wo - ws).norm());
        scale = scale.max(ws.norm());
    }
    println!("[{label}] interior compare: max |oracle - series| = {worst:.4e} (scale {scale:.3e})");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ks: Vec<C64> = (0..20)
        .map(|_| C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.5..1.5)))
        .collect();
    let (gr, grh) = oracle.global_relation_residuals(&ks);
    println!("[{label}] GR residuals: rho {gr:.4e} rhohat {grh:.4e}");
}

fn self_convergence() {
    let h = 2.0;
    let z0 = C64::new(std::f64::consts::PI, 1.0);
    let kind = SingularityKind64::Stokeslet(C64::new(0.7, 0.4));
    let mut params = OracleParams::default();
    params.m_cheb = 12;
    params.n_colloc = 16;
    let lo = RayOracle::new(&kind, z0, h, params.clone()).unwrap();
    params.m_cheb = 24;
    params.n_colloc = 28;
    let hi = RayOracle::new(&kind, z0, h, params).unwrap();
    let mut worst = 0.0_f64;
    for &z in &grid(h) {
        if (z - z0).norm() < 0.2 {
            continue;
        }
        worst = worst.max((lo.velocity(z) - hi.velocity(z)).norm());
    }
    println!("[conv] M12/n16 vs M24/n28 interior drift: {worst:.4e}");
}

fn solver_only() {
    let z0 = C64::new(std::f64::consts::PI, 1.0);
    let kind = SingularityKind64::Stokeslet(C64::new(0.7, 0.4));
    let mut sys = TransformSystem::new(&kind, z0, 2.0, 20, 24).unwrap();
    sys.solve().unwrap();
    let d = &sys.diag;
    println!(
        "[solver M20] shape {:?} rank {} cond {:.4e} residual {:.4e}",
        d.shape, d.rank, d.condition, d.residual
    );
    println!("[solver M20] d = {:?}", sys.d_solved());
}

fn main() {
    solver_only();
    compare(
        SingularityKind64::Stokeslet(C64::new(0.7, 0.4)),
        "stokeslet",
    );
    compare(
        SingularityKind64::Stresslet(C64::new(0.8, -0.3)),
        "stresslet",
    );
    self_convergence();
}
