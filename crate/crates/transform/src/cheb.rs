//! Chebyshev basis helpers: first-kind values, Clenshaw evaluation, and the
//! derivative coefficient map.

use num_complex::Complex64;

/// Values `T_0(x), …, T_{m−1}(x)` of the first `m` Chebyshev polynomials.
pub fn cheb_row(x: f64, m: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(m);
    let mut t0 = 1.0;
    let mut t1 = x;
    for j in 0..m {
        row.push(match j {
            0 => 1.0,
            1 => x,
            _ => {
                let t2 = 2.0 * x * t1 - t0;
                t0 = t1;
                t1 = t2;
                t2
            }
        });
    }
    row
}

/// Clenshaw evaluation of `Σ c_j T_j(x)` with complex coefficients.
pub fn chebval(x: f64, c: &[Complex64]) -> Complex64 {
    match c.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => c[0],
        _ => {
            let mut b1 = Complex64::new(0.0, 0.0);
            let mut b2 = Complex64::new(0.0, 0.0);
            for &cj in c.iter().rev() {
                let b0 = cj + 2.0 * x * b1 - b2;
                b2 = b1;
                b1 = b0;
            }
            b1 - x * b2
        }
    }
}

/// Coefficients of `d/dx Σ c_j T_j(x)` in the same basis.
pub fn chebder(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len();
    if n <= 1 {
        return vec![Complex64::new(0.0, 0.0)];
    }
    let mut c = c.to_vec();
    let mut der = vec![Complex64::new(0.0, 0.0); n - 1];
    for j in (3..n).rev() {
        let cj = c[j];
        der[j - 1] = 2.0 * j as f64 * cj;
        c[j - 2] += cj * (j as f64 / (j as f64 - 2.0));
    }
    if n > 2 {
        der[1] = 4.0 * c[2];
    }
    der[0] = c[1];
    der
}
