//! Joint law of Brownian local time at the origin and the endpoint.
//!
//! For a one-dimensional Brownian motion started at `x`, run for time `s`,
//! the pair (L_s, B_s) has an atom on {L = 0} (paths that never reach the
//! origin) and a closed-form density on {L > 0}:
//!
//! ```text
//! P_x(L_s = 0, B_s in dz)  = [g_1(s, z - x) - g_1(s, z + x)] dz,   xz >= 0,
//! P_x(L_s in dy, B_s in dz) = (y + |z| + |x|) / sqrt(2 pi s^3)
//!                             * exp(-(y + |z| + |x|)^2 / 2s) dy dz,  y > 0.
//! ```
//!
//! Sampling is exact and rejection-free: the endpoint is one Gaussian draw,
//! absorption is decided by the exact bridge-crossing probability, and the
//! local time given a visit inverts its Rayleigh-like tail analytically.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::specfun::{erfc, gauss1, normal_cdf};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

/// The mixed law of (L_s, B_s): an atom weight plus densities for both parts.
#[derive(Debug, Clone)]
pub struct LocalTimeJoint {
    pub x: f64,
    pub s: f64,
    /// Weight of {L_s = 0}: erf(|x| / sqrt(2 s)).
    pub atom: f64,
}

/// Build the joint law of (L_s, B_s) started from x.
pub fn local_time_joint(x: f64, s: f64) -> Result<LocalTimeJoint> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("local_time_joint requires s > 0, got {s}")));
    }
    let atom = 1.0 - erfc(x.abs() / (2.0 * s).sqrt());
    Ok(LocalTimeJoint { x, s, atom })
}

impl LocalTimeJoint {
    /// Density of the continuous part at (y, z), y > 0, z real.
    pub fn density(&self, y: f64, z: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let c = y + z.abs() + self.x.abs();
        c / (2.0 * PI * self.s.powi(3)).sqrt() * (-c * c / (2.0 * self.s)).exp()
    }

    /// Endpoint density of the atom part (zero off the starting side).
    pub fn atom_density(&self, z: f64) -> f64 {
        if self.x == 0.0 || z * self.x < 0.0 {
            return 0.0;
        }
        gauss1(self.s, z - self.x) - gauss1(self.s, z + self.x)
    }
}

/// Exact draw of (L_s, B_s) started from x.
pub fn local_time_joint_sample<R: Rng + ?Sized>(x: f64, s: f64, rng: &mut R) -> Result<(f64, f64)> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("local_time_joint_sample requires s > 0, got {s}")));
    }
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let z_raw: f64 = ax + s.sqrt() * StandardNormal.sample::<f64, _>(rng);
    let visit = if z_raw <= 0.0 {
        true
    } else {
        // bridge crossing probability exp(-2 ax z / s)
        let p_hit = (-2.0 * ax * z_raw / s).exp();
        rng.random::<f64>() < p_hit
    };
    if !visit {
        return Ok((0.0, sign * z_raw));
    }
    let c = ax + z_raw.abs();
    let u = rng.random::<f64>().clamp(1e-16, 1.0 - 1e-16);
    let y = (c * c - 2.0 * s * u.ln()).sqrt() - c;
    Ok((y, sign * z_raw))
}

/// Batch of joint draws under an explicit stream.
pub fn local_time_joint_draws(x: f64, s: f64, n: usize, stream: RngStream) -> Result<Vec<(f64, f64)>> {
    let mut rng = stream.rng();
    (0..n).map(|_| local_time_joint_sample(x, s, &mut rng)).collect()
}

/// z-density (continuous part) of the exponentially weighted occupation:
/// d/dz E_x[ exp(kappa L_s); L_s > 0, B_s in dz ] as a function of
/// c = |z| + |x|.
pub fn local_time_exp_z_density(kappa: f64, s: f64, c: f64) -> f64 {
    gauss1(s, c)
        + 0.5
            * kappa
            * (0.5 * kappa * kappa * s - kappa * c).exp()
            * erfc(c / (2.0 * s).sqrt() - kappa * (0.5 * s).sqrt())
}

/// E_x[ exp(kappa L_s); |B_s| < 1 ] for |x| < 1, by the closed two-term form:
/// the Gaussian mass of (-1, 1) plus the Erfc term integrated over z.
pub fn local_time_exp_box(kappa: f64, s: f64, x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("local_time_exp_box requires |x| < 1, got {x}")));
    }
    if !(s > 0.0) {
        return Err(Error::domain(format!("local_time_exp_box requires s > 0, got {s}")));
    }
    if kappa < 0.0 {
        return Err(Error::domain(format!("local_time_exp_box requires kappa >= 0, got {kappa}")));
    }
    let rs = s.sqrt();
    let gauss_mass = normal_cdf((1.0 - x) / rs) - normal_cdf((-1.0 - x) / rs);
    if kappa == 0.0 {
        return Ok(gauss_mass);
    }
    let ax = x.abs();
    // integrand is even in z; integrate the weighted term over (0, 1).
    let weighted = crate::quad::adaptive_simpson(
        |z: f64| {
            let c = z + ax;
            0.5 * kappa
                * (0.5 * kappa * kappa * s - kappa * c).exp()
                * erfc(c / (2.0 * s).sqrt() - kappa * (0.5 * s).sqrt())
        },
        0.0,
        1.0,
        1e-12,
    );
    Ok(gauss_mass + 2.0 * weighted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{adaptive_simpson, integrate_to_inf};

    #[test]
    fn total_mass_is_one() {
        for &(x, s) in &[(0.0, 1.0), (0.3, 1.0), (-0.7, 0.5), (2.0, 0.25)] {
            let law = local_time_joint(x, s).unwrap();
            let atom_mass = adaptive_simpson(|z| law.atom_density(z), -12.0 * s.sqrt() - x.abs(),
                12.0 * s.sqrt() + x.abs(), 1e-11);
            let cont_mass = integrate_to_inf(
                |y| {
                    adaptive_simpson(
                        |z| law.density(y, z),
                        -(12.0f64 * s.sqrt() + x.abs()),
                        12.0 * s.sqrt() + x.abs(),
                        1e-12,
                    )
                },
                1e-12,
                0.5 * s.sqrt(),
                1e-11,
            );
            assert!(
                (atom_mass + cont_mass - 1.0).abs() < 1e-8,
                "x={x}, s={s}: atom {atom_mass} + cont {cont_mass}"
            );
            assert!((atom_mass - law.atom).abs() < 1e-8);
        }
    }

    #[test]
    fn atom_vanishes_from_origin() {
        let law = local_time_joint(0.0, 1.0).unwrap();
        assert_eq!(law.atom, 0.0);
        assert_eq!(law.atom_density(0.5), 0.0);
    }

    #[test]
    fn z_marginal_is_free_gaussian() {
        // atom density + int density dy = g_1(s, z - x)
        let (x, s) = (0.4, 0.8);
        let law = local_time_joint(x, s).unwrap();
        for &z in &[-1.0, -0.2, 0.1, 0.5, 1.7] {
            let cont = integrate_to_inf(|y| law.density(y, z), 1e-14, 0.3 * s.sqrt(), 1e-12);
            let total = law.atom_density(z) + cont;
            let want = gauss1(s, z - x);
            assert!((total - want).abs() < 1e-9, "z={z}: {total} vs {want}");
        }
    }

    #[test]
    fn sampler_endpoint_matches_gaussian_ks() {
        let (x, s) = (0.3, 1.0);
        let n = 100_000;
        let draws = local_time_joint_draws(x, s, n, RngStream::with_stream(13, 1)).unwrap();
        let mut z: Vec<f64> = draws.iter().map(|d| d.1).collect();
        z.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let d = crate::laws::ks_statistic(&z, |v| normal_cdf((v - x) / s.sqrt()));
        assert!(d < 1.63 / (n as f64).sqrt(), "KS {d:.5}");
    }

    #[test]
    fn sampler_atom_frequency_matches() {
        let (x, s) = (0.7, 0.9);
        let n = 100_000;
        let draws = local_time_joint_draws(x, s, n, RngStream::with_stream(13, 2)).unwrap();
        let freq = draws.iter().filter(|d| d.0 == 0.0).count() as f64 / n as f64;
        let atom = local_time_joint(x, s).unwrap().atom;
        assert!((freq - atom).abs() < 4.0 * (atom * (1.0 - atom) / n as f64).sqrt());
    }

    #[test]
    fn sampler_weighted_box_matches_closed_form() {
        let (kappa, s, x) = (1.0, 1.0, 0.3);
        let n = 200_000;
        let draws = local_time_joint_draws(x, s, n, RngStream::with_stream(13, 3)).unwrap();
        let (mut mean, mut m2) = (0.0, 0.0);
        for (i, &(y, z)) in draws.iter().enumerate() {
            let v = if z.abs() < 1.0 { (kappa * y).exp() } else { 0.0 };
            let d = v - mean;
            mean += d / (i + 1) as f64;
            m2 += d * (v - mean);
        }
        let se = (m2 / ((n - 1) as f64 * n as f64)).sqrt();
        let want = local_time_exp_box(kappa, s, x).unwrap();
        assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want} (se {se:.2e})");
    }

    #[test]
    fn far_start_gives_zero_local_time() {
        let draws = local_time_joint_draws(40.0, 1.0, 2_000, RngStream::with_stream(13, 4)).unwrap();
        assert!(draws.iter().all(|d| d.0 == 0.0));
    }

    #[test]
    fn exp_box_reduces_to_gaussian_mass_at_zero_weight() {
        let (s, x) = (0.7, 0.2);
        let got = local_time_exp_box(0.0, s, x).unwrap();
        let want = adaptive_simpson(|z| gauss1(s, z - x), -1.0, 1.0, 1e-12);
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn exp_box_respects_displayed_lower_bound() {
        // E_x[e^{kappa L_s}; |B_s|<1] >= kappa exp(kappa^2 s/2 - 2 kappa) Erfc(sqrt(2/s))
        for &(kappa, s, x) in &[(1.0, 1.0, 0.3), (2.0, 0.5, 0.0), (4.0, 0.8, -0.6)] {
            let v = local_time_exp_box(kappa, s, x).unwrap();
            let bound = kappa * (0.5 * kappa * kappa * s - 2.0 * kappa).exp() * erfc((2.0 / s).sqrt());
            assert!(v >= bound, "kappa={kappa}, s={s}, x={x}: {v} < {bound}");
        }
    }

    #[test]
    fn exp_box_matches_direct_2d_quadrature() {
        // Independent oracle: integrate e^{kappa y} against the joint law.
        let (kappa, s, x) = (0.8, 0.6, 0.25);
        let law = local_time_joint(x, s).unwrap();
        let atom_part = adaptive_simpson(|z| law.atom_density(z), -1.0, 1.0, 1e-12);
        let cont_part = integrate_to_inf(
            |y| {
                (kappa * y).exp()
                    * adaptive_simpson(|z| law.density(y, z), -1.0, 1.0, 1e-13)
            },
            1e-13,
            0.25,
            1e-11,
        );
        let got = local_time_exp_box(kappa, s, x).unwrap();
        assert!(
            (got - atom_part - cont_part).abs() < 1e-7,
            "{got} vs {}",
            atom_part + cont_part
        );
    }
}
