//! Gaussian kernel, sphere areas, and ball masses.

use super::gamma::{gamma_fn, gamma_p};
use crate::error::{Error, Result};
use crate::Dim;
use std::f64::consts::PI;

/// Surface area of the unit sphere S^{N-1} in R^N: 2 pi^{N/2} / Gamma(N/2).
pub fn sphere_area(n: Dim) -> f64 {
    let half = n.get() as f64 / 2.0;
    2.0 * PI.powf(half) / gamma_fn(half).expect("N/2 > 0")
}

/// Volume of the unit ball in R^N.
pub fn ball_volume(n: Dim) -> f64 {
    sphere_area(n) / n.get() as f64
}

/// Heat kernel (2 pi t)^{-d/2} exp(-|x|^2 / 2t).
pub fn gauss_kernel(d: Dim, t: f64, x: &[f64]) -> Result<f64> {
    if x.len() != d.get() as usize {
        return Err(Error::usage(format!(
            "gauss_kernel: point has {} coordinates, dimension is {}",
            x.len(),
            d.get()
        )));
    }
    let r2 = x.iter().map(|v| v * v).sum::<f64>();
    gauss_kernel_sq(d, t, r2)
}

/// Heat kernel as a function of |x|.
pub fn gauss_kernel_radial(d: Dim, t: f64, r: f64) -> Result<f64> {
    gauss_kernel_sq(d, t, r * r)
}

fn gauss_kernel_sq(d: Dim, t: f64, r2: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("gauss_kernel requires t > 0, got {t}")));
    }
    Ok((2.0 * PI * t).powf(-(d.get() as f64) / 2.0) * (-r2 / (2.0 * t)).exp())
}

/// One-dimensional Gaussian density g_1(t, x) without the Dim plumbing.
pub fn gauss1(t: f64, x: f64) -> f64 {
    (2.0 * PI * t).sqrt().recip() * (-x * x / (2.0 * t)).exp()
}

/// Mass the centered heat kernel puts in the ball of radius `r`:
/// P(|N(0, t I_N)| <= r), a regularized incomplete gamma in r^2 / 2t.
pub fn gaussian_ball_mass(n: Dim, t: f64, r: f64) -> Result<f64> {
    if !(t > 0.0) || !(r >= 0.0) {
        return Err(Error::domain(format!("gaussian_ball_mass: t={t}, r={r}")));
    }
    gamma_p(n.get() as f64 / 2.0, r * r / (2.0 * t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive_simpson;

    #[test]
    fn sphere_areas_low_dimensions() {
        assert!((sphere_area(Dim::new(1).unwrap()) - 2.0).abs() < 1e-14);
        assert!((sphere_area(Dim::new(2).unwrap()) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(Dim::new(3).unwrap()) - 4.0 * PI).abs() < 1e-13);
        assert!((ball_volume(Dim::new(3).unwrap()) - 4.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn kernel_point_values_and_scaling() {
        let d1 = Dim::new(1).unwrap();
        assert!((gauss_kernel(d1, 1.0, &[0.0]).unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        // scaling identity g_d(t, x) = t^{-d/2} g_d(1, x / sqrt t)
        let d3 = Dim::new(3).unwrap();
        let (t, x) = (0.37, [0.2, -0.5, 1.1]);
        let lhs = gauss_kernel(d3, t, &x).unwrap();
        let xs: Vec<f64> = x.iter().map(|v| v / t.sqrt()).collect();
        let rhs = t.powf(-1.5) * gauss_kernel(d3, 1.0, &xs).unwrap();
        assert!((lhs - rhs).abs() < 1e-14 * lhs.abs());
    }

    #[test]
    fn kernel_normalizes_by_quadrature() {
        // d = 1 and (radially) d = 3.
        let d1 = Dim::new(1).unwrap();
        let m1 = adaptive_simpson(|x| gauss_kernel(d1, 0.8, &[x]).unwrap(), -12.0, 12.0, 1e-12);
        assert!((m1 - 1.0).abs() < 1e-10);
        let d3 = Dim::new(3).unwrap();
        let m3 = adaptive_simpson(
            |r| sphere_area(d3) * r * r * gauss_kernel_radial(d3, 0.8, r).unwrap(),
            0.0,
            14.0,
            1e-12,
        );
        assert!((m3 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernel_rejects_bad_time() {
        assert!(gauss_kernel(Dim::new(1).unwrap(), 0.0, &[0.0]).is_err());
        assert!(gauss_kernel(Dim::new(1).unwrap(), -1.0, &[0.0]).is_err());
    }

    #[test]
    fn ball_mass_matches_radial_quadrature() {
        let d3 = Dim::new(3).unwrap();
        let (t, r) = (0.6, 1.2);
        let want = adaptive_simpson(
            |s| sphere_area(d3) * s * s * gauss_kernel_radial(d3, t, s).unwrap(),
            0.0,
            r,
            1e-12,
        );
        assert!((gaussian_ball_mass(d3, t, r).unwrap() - want).abs() < 1e-10);
        let d2 = Dim::new(2).unwrap();
        let closed = 1.0 - (-r * r / (2.0 * t)).exp();
        assert!((gaussian_ball_mass(d2, t, r).unwrap() - closed).abs() < 1e-12);
    }
}
