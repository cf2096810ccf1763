//! Fourth-order finite differences on uniform grids.
//!
//! Interior points use the five-point central stencils; the two points at
//! each end use one-sided stencils of the same order.

use num_complex::Complex64;

/// Points at each end excluded from residual norms.
pub const INTERIOR_MARGIN: usize = 8;

pub fn first_derivative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 5, "stencil needs at least five points");
    let s = 1.0 / (12.0 * h);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) * s;
    }
    out[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) * s;
    out[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) * s;
    let m = n - 1;
    out[m] = -(f[m] * -25.0 + f[m - 1] * 48.0 - f[m - 2] * 36.0 + f[m - 3] * 16.0 - f[m - 4] * 3.0) * s;
    out[m - 1] = -(f[m] * -3.0 - f[m - 1] * 10.0 + f[m - 2] * 18.0 - f[m - 3] * 6.0 + f[m - 4]) * s;
    out
}

pub fn second_derivative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    assert!(n >= 6, "stencil needs at least six points");
    let s = 1.0 / (12.0 * h * h);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        out[i] = (-f[i - 2] + f[i - 1] * 16.0 - f[i] * 30.0 + f[i + 1] * 16.0 - f[i + 2]) * s;
    }
    let edge = |a: [Complex64; 6]| {
        [
            (a[0] * 45.0 - a[1] * 154.0 + a[2] * 214.0 - a[3] * 156.0 + a[4] * 61.0 - a[5] * 10.0) * s,
            (a[0] * 10.0 - a[1] * 15.0 - a[2] * 4.0 + a[3] * 14.0 - a[4] * 6.0 + a[5]) * s,
        ]
    };
    let [e0, e1] = edge([f[0], f[1], f[2], f[3], f[4], f[5]]);
    out[0] = e0;
    out[1] = e1;
    let m = n - 1;
    let [e0, e1] = edge([f[m], f[m - 1], f[m - 2], f[m - 3], f[m - 4], f[m - 5]]);
    out[m] = e0;
    out[m - 1] = e1;
    out
}

/// Discrete ℓ² norm over the interior index range.
pub fn interior_norm(f: &[Complex64]) -> f64 {
    interior(f).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn interior(f: &[Complex64]) -> &[Complex64] {
    &f[INTERIOR_MARGIN..f.len() - INTERIOR_MARGIN]
}

/// ⟨f, g⟩ over the interior (grid spacing omitted; it cancels in quotients).
pub fn interior_inner(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    interior(f).iter().zip(interior(g)).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, h: f64, f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        (0..n).map(|i| Complex64::new(f(-1.0 + i as f64 * h), 0.0)).collect()
    }

    #[test]
    fn exact_on_quartics() {
        // All stencils above are exact for polynomials of degree ≤ 4.
        let n = 21;
        let h = 0.1;
        let f = sample(n, h, |x| x.powi(4) - 2.0 * x.powi(3) + x - 3.0);
        let d1 = first_derivative(&f, h);
        let d2 = second_derivative(&f, h);
        for i in 0..n {
            let x = -1.0 + i as f64 * h;
            assert!((d1[i].re - (4.0 * x.powi(3) - 6.0 * x * x + 1.0)).abs() < 1e-10, "d1 at {i}");
            assert!((d2[i].re - (12.0 * x * x - 12.0 * x)).abs() < 1e-9, "d2 at {i}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| {
            let h = 2.0 / (n - 1) as f64;
            let f = sample(n, h, f64::sin);
            let d2 = second_derivative(&f, h);
            (0..n).map(|i| (d2[i].re + (-1.0 + i as f64 * h).sin()).abs()).fold(0.0, f64::max)
        };
        let ratio = err(41) / err(81);
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }
}
