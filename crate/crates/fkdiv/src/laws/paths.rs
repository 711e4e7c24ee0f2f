//! Exact samplers for the path-decomposition laws: the last zero before a
//! fixed time (arcsine) and the Brownian meander endpoint (Rayleigh).

use crate::error::{Error, Result};
use crate::rng::RngStream;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

/// Last zero of Brownian motion before time t: density 1/(pi sqrt(v(t-v))),
/// sampled exactly via v = t sin^2(pi U / 2).
pub fn last_zero_sample<R: Rng + ?Sized>(t: f64, rng: &mut R) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("last_zero_sample requires t > 0, got {t}")));
    }
    let u = rng.random::<f64>();
    let s = (FRAC_PI_2 * u).sin();
    Ok(t * s * s)
}

/// Arcsine CDF: P(gamma_t <= v) = (2/pi) arcsin sqrt(v/t).
pub fn last_zero_cdf(t: f64, v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else if v >= t {
        1.0
    } else {
        2.0 / PI * (v / t).sqrt().asin()
    }
}

/// Endpoint of a Brownian meander of the given duration: Rayleigh density
/// (y / dur) exp(-y^2 / 2 dur), sampled exactly via y = sqrt(-2 dur ln U).
pub fn meander_endpoint_sample<R: Rng + ?Sized>(dur: f64, rng: &mut R) -> Result<f64> {
    if !(dur > 0.0) {
        return Err(Error::domain(format!("meander_endpoint_sample requires dur > 0, got {dur}")));
    }
    let u = rng.random::<f64>().clamp(1e-16, 1.0 - 1e-16);
    Ok((-2.0 * dur * u.ln()).sqrt())
}

/// Rayleigh CDF: P(M <= y) = 1 - exp(-y^2 / 2 dur).
pub fn meander_endpoint_cdf(dur: f64, y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else {
        1.0 - (-y * y / (2.0 * dur)).exp()
    }
}

pub fn last_zero_draws(t: f64, n: usize, stream: RngStream) -> Result<Vec<f64>> {
    let mut rng = stream.rng();
    (0..n).map(|_| last_zero_sample(t, &mut rng)).collect()
}

pub fn meander_endpoint_draws(dur: f64, n: usize, stream: RngStream) -> Result<Vec<f64>> {
    let mut rng = stream.rng();
    (0..n).map(|_| meander_endpoint_sample(dur, &mut rng)).collect()
}
