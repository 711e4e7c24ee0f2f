//! One-sided stable subordinators and Brownian first-passage times.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

/// Laplace transform of the alpha/2-stable subordinator:
/// E exp(-lambda T_t) = exp(-t lambda^{alpha/2}).
pub fn subordinator_laplace(alpha: f64, t: f64, lam: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if t < 0.0 || lam < 0.0 {
        return Err(Error::domain(format!("subordinator_laplace: t={t}, lam={lam}")));
    }
    Ok((-t * lam.powf(alpha / 2.0)).exp())
}

/// One draw of T_t for the alpha/2-stable subordinator (`alpha` in (0,2)).
///
/// Uses the classical two-variate transformation for a standardized
/// one-sided stable variable of index beta = alpha/2, then the scaling
/// T_t = t^{1/beta} S.
pub fn subordinator_sample<R: Rng + ?Sized>(alpha: f64, t: f64, rng: &mut R) -> Result<f64> {
    check_alpha(alpha)?;
    if !(t > 0.0) {
        return Err(Error::domain(format!("subordinator_sample: t={t}")));
    }
    let beta = alpha / 2.0;
    Ok(t.powf(1.0 / beta) * one_sided_stable(beta, rng))
}

/// Standardized one-sided stable draw: E exp(-lambda S) = exp(-lambda^beta),
/// 0 < beta < 1 (Kanter's transformation of a uniform and an exponential).
pub fn one_sided_stable<R: Rng + ?Sized>(beta: f64, rng: &mut R) -> f64 {
    debug_assert!(beta > 0.0 && beta < 1.0);
    let u = clamp_open(rng.random::<f64>()) * PI;
    let w = -clamp_open(rng.random::<f64>()).ln();
    let s1 = (beta * u).sin() / u.sin().powf(1.0 / beta);
    let s2 = (((1.0 - beta) * u).sin() / w).powf((1.0 - beta) / beta);
    s1 * s2
}

/// One draw of tau_a, the first time the running maximum of a standard
/// Brownian motion exceeds `a` (density a / sqrt(2 pi s^3) exp(-a^2 / 2s)).
pub fn hitting_time_sample<R: Rng + ?Sized>(a: f64, rng: &mut R) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("hitting_time_sample: a={a}")));
    }
    let mut z: f64 = StandardNormal.sample(rng);
    while z == 0.0 {
        z = StandardNormal.sample(rng);
    }
    Ok((a / z) * (a / z))
}

/// CDF of tau_a, for goodness-of-fit tests: P(tau_a <= s) = erfc(a / sqrt(2s)).
pub fn hitting_time_cdf(a: f64, s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        crate::specfun::erfc(a / (2.0 * s).sqrt())
    }
}

/// Batch of subordinator draws under an explicit stream.
pub fn subordinator_draws(alpha: f64, t: f64, n: usize, stream: RngStream) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let mut rng = stream.rng();
    (0..n).map(|_| subordinator_sample(alpha, t, &mut rng)).collect()
}

/// Batch of first-passage draws under an explicit stream.
pub fn hitting_time_draws(a: f64, n: usize, stream: RngStream) -> Result<Vec<f64>> {
    let mut rng = stream.rng();
    (0..n).map(|_| hitting_time_sample(a, &mut rng)).collect()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain(format!("stable index alpha must be in (0,2), got {alpha}")));
    }
    Ok(())
}

fn clamp_open(u: f64) -> f64 {
    u.clamp(1e-14, 1.0 - 1e-14)
}
