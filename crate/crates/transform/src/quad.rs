//! Gauss–Legendre quadrature: single panels, composite panels, and the
//! graded panel layout used along the inverse-transform rays.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the Legendre polynomial `P_n` from the Chebyshev-like
/// initial guesses; accurate to machine precision for the modest `n`
/// (≤ a few hundred) this crate uses.
pub fn leggauss(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for k in 1..=n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p2) / k as f64;
            }
            dp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                // One more polishing step after convergence.
                let mut q0 = 1.0;
                let mut q1 = 0.0;
                for k in 1..=n {
                    let q2 = q1;
                    q1 = q0;
                    q0 = ((2 * k - 1) as f64 * x * q1 - (k - 1) as f64 * q2) / k as f64;
                }
                dp = n as f64 * (x * q0 - q1) / (x * x - 1.0);
                x -= q0 / dp;
                break;
            }
        }
        // Nodes come out in descending order from this guess; store ascending.
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

/// Composite Gauss–Legendre nodes/weights over consecutive panels
/// `[bounds[0], bounds[1]], [bounds[1], bounds[2]], …`, `n` points each.
pub fn gl_nodes(bounds: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(bounds.len() >= 2, "need at least one panel");
    let (xg, wg) = leggauss(n);
    let mut xs = Vec::with_capacity((bounds.len() - 1) * n);
    let mut ws = Vec::with_capacity((bounds.len() - 1) * n);
    for pair in bounds.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for (x, w) in xg.iter().zip(&wg) {
            xs.push(0.5 * (b - a) * x + 0.5 * (a + b));
            ws.push(0.5 * (b - a) * w);
        }
    }
    (xs, ws)
}

/// `count + 1` equally spaced breakpoints from `a` to `b` inclusive.
pub fn linspace_bounds(a: f64, b: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| a + (b - a) * i as f64 / count as f64)
        .collect()
}

/// Panel layout along a decay ray: fixed-width panels from the origin out to
/// `k_max` (the last panel absorbs the remainder), `n` Gauss–Legendre points
/// per panel.
pub fn ray_nodes(k_max: f64, width: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(k_max > 0.0 && width > 0.0, "ray extent must be positive");
    let mut edges = Vec::new();
    let mut i = 0usize;
    loop {
        let a = width * i as f64;
        if a >= k_max - 1e-9 {
            break;
        }
        edges.push(a);
        i += 1;
    }
    edges.push(k_max);
    gl_nodes(&edges, n)
}
