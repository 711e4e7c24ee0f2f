//! Deterministic quadrature used by densities, kernels, and test oracles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Adaptive Simpson on `[a, b]` with an absolute tolerance.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrate `f` over `[a, inf)` for integrands with (at least) exponential
/// decay: panels of geometrically growing width are summed until three
/// consecutive panels fall below the tolerance.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, first_width: f64, tol: f64) -> f64 {
    let mut lo = a;
    let mut width = first_width.max(1e-12);
    let mut total = 0.0;
    let mut small_panels = 0;
    for _ in 0..200 {
        let hi = lo + width;
        let panel = adaptive_simpson(&f, lo, hi, tol * 0.05);
        total += panel;
        if panel.abs() < tol {
            small_panels += 1;
            if small_panels >= 3 {
                break;
            }
        } else {
            small_panels = 0;
        }
        lo = hi;
        width *= 1.6;
    }
    total
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert_with(|| Arc::new(gauleg(n))).clone()
}

fn gauleg(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, polished by Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * z * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            pp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p0 / pp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Fixed-order Gauss-Legendre on `[a, b]`.
pub fn gl_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, order: usize) -> f64 {
    let nw = gauss_legendre(order);
    let (nodes, weights) = (&nw.0, &nw.1);
    let c = 0.5 * (b - a);
    let d = 0.5 * (a + b);
    let mut sum = 0.0;
    for (xi, wi) in nodes.iter().zip(weights.iter()) {
        sum += wi * f(c * xi + d);
    }
    c * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_polynomial_is_exact() {
        let v = adaptive_simpson(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_oscillatory() {
        let v = adaptive_simpson(|x| x.sin(), 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn semi_infinite_gaussian() {
        let v = integrate_to_inf(|x| (-x * x / 2.0).exp(), 0.0, 0.5, 1e-12);
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn gl_matches_simpson() {
        let a = gl_fixed(|x| (x * x).sin() + x, 0.3, 1.7, 24);
        let b = adaptive_simpson(|x| (x * x).sin() + x, 0.3, 1.7, 1e-13);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn gl_nodes_symmetric_and_normalized() {
        let nw = gauss_legendre(16);
        let total: f64 = nw.1.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
        assert!((nw.0[0] + nw.0[15]).abs() < 1e-14);
    }
}
