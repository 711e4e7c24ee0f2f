//! Bessel functions of real order: J (first kind), the modified pair I and K,
//! and the derivative of J needed by the zero finder.
//!
//! Three evaluation regimes for `J`:
//!   * ascending power series for small argument,
//!   * Steed's continued-fraction method (CF1 + CF2 with downward/upward
//!     recurrences) in the middle range, which stays accurate through the
//!     turning-point region `x ~ nu`,
//!   * Hankel's large-argument expansion once it is safely convergent.
//! Orders in (-1, 0) at moderate/large argument go through the connection
//! formula J_{-nu} = J_nu cos(nu pi) - Y_nu sin(nu pi).

use super::gamma::gamma_fn;
use crate::error::{Error, Result};
use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 60_000;
const SERIES_MAX_X: f64 = 2.0;

/// Bessel function of the first kind J_mu(x) for mu > -1, x >= 0.
pub fn bessel_j(mu: f64, x: f64) -> Result<f64> {
    Ok(bessel_j_with_deriv(mu, x)?.0)
}

/// J_mu(x) together with its x-derivative.
pub fn bessel_j_with_deriv(mu: f64, x: f64) -> Result<(f64, f64)> {
    if !(mu > -1.0) {
        return Err(Error::domain(format!("bessel_j requires mu > -1, got {mu}")));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        let j = if mu == 0.0 {
            1.0
        } else if mu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        let jp = match mu {
            m if m == 1.0 => 0.5,
            m if m > 1.0 => 0.0,
            m if m == 0.0 => 0.0,
            _ => f64::INFINITY,
        };
        return Ok((j, jp));
    }
    if x < SERIES_MAX_X {
        let j = series_j(mu, x);
        let j_next = series_j(mu + 1.0, x);
        return Ok((j, mu / x * j - j_next));
    }
    if x >= hankel_threshold(mu.abs() + 1.0) {
        let j = hankel_j(mu, x);
        let j_next = hankel_j(mu + 1.0, x);
        return Ok((j, mu / x * j - j_next));
    }
    let j = midrange_j(mu, x)?;
    let j_next = if x >= hankel_threshold(mu.abs() + 2.0) {
        hankel_j(mu + 1.0, x)
    } else {
        midrange_j(mu + 1.0, x)?
    };
    Ok((j, mu / x * j - j_next))
}

fn midrange_j(mu: f64, x: f64) -> Result<f64> {
    if mu >= 0.0 {
        Ok(steed_jy(mu, x)?.0)
    } else {
        let nu = -mu;
        let (j, y, _, _) = steed_jy(nu, x)?;
        Ok(j * (nu * PI).cos() - y * (nu * PI).sin())
    }
}

/// J_mu(x) / x^mu, finite down to x = 0. This is the combination the
/// confinement series needs so that the start point rho = 0 is regular.
pub fn bessel_j_over_pow(mu: f64, x: f64) -> Result<f64> {
    if !(mu > -1.0) || !(x >= 0.0) {
        return Err(Error::domain(format!("bessel_j_over_pow: mu={mu}, x={x}")));
    }
    if x < SERIES_MAX_X {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..300 {
            term *= -q / (k as f64 * (mu + k as f64));
            sum += term;
            if term.abs() < sum.abs() * EPS + FPMIN {
                break;
            }
        }
        Ok(sum / (2f64.powf(mu) * gamma_fn(mu + 1.0)?))
    } else {
        Ok(bessel_j(mu, x)? / x.powf(mu))
    }
}

fn series_j(mu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..300 {
        term *= -q / (k as f64 * (mu + k as f64));
        sum += term;
        if term.abs() < sum.abs() * EPS + FPMIN {
            break;
        }
    }
    let pref = (0.5 * x).powf(mu) / gamma_fn(mu + 1.0).expect("mu + 1 > 0");
    pref * sum
}

fn hankel_threshold(nu: f64) -> f64 {
    (3.0 * nu * nu + 10.0).max(25.0)
}

/// Large-argument expansion (terminates exactly for half-integer order).
fn hankel_j(nu: f64, x: f64) -> f64 {
    let mu4 = 4.0 * nu * nu;
    let chi = x - (0.5 * nu + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut m = 1usize;
    loop {
        let odd = (2 * m - 1) as f64;
        term *= (mu4 - odd * odd) / (m as f64 * 8.0 * x);
        let contrib = term;
        match m % 4 {
            1 => q += contrib,
            2 => p -= contrib,
            3 => q -= contrib,
            _ => p += contrib,
        }
        if contrib.abs() < 1e-17 || m > 40 {
            break;
        }
        m += 1;
    }
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Steed's method: (J_nu, Y_nu, J'_nu, Y'_nu) for nu >= 0, x >= 2.
fn steed_jy(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    debug_assert!(nu >= 0.0 && x >= SERIES_MAX_X);
    let nl = (nu - x + 1.5).max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for J'_nu / J_nu, with the sign of J_nu tracked in isign.
    let mut isign = 1i32;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric(format!("bessel CF1 stalled at nu={nu}, x={x}")));
    }

    let mut rjl = isign as f64 * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2 for p + i q = (J' - i Y') / (J - i Y) at order xmu.
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr = cr * dr - ci * di;
    let dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    converged = false;
    for i in 2..=MAXIT {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numeric(format!("bessel CF2 stalled at nu={nu}, x={x}")));
    }

    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    rjmu = rjmu.copysign(rjl);
    let rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;

    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    let rjp = rjp1 * scale;

    let mut rymu_up = rymu;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu_up;
        rymu_up = ry1;
        ry1 = rytemp;
    }
    let ry = rymu_up;
    let ryp = nu * xi * rymu_up - ry1;
    Ok((rj, ry, rjp, ryp))
}

/// Modified Bessel function I_nu(x) for nu > -1, x >= 0.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) || !(x >= 0.0) {
        return Err(Error::domain(format!("bessel_i: nu={nu}, x={x}")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        });
    }
    if x <= 650.0 {
        Ok(series_i(nu, x))
    } else {
        Ok(bessel_i_scaled(nu, x)? * x.exp())
    }
}

/// exp(-x) I_nu(x), safe against overflow for large x.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0) || !(x >= 0.0) {
        return Err(Error::domain(format!("bessel_i_scaled: nu={nu}, x={x}")));
    }
    if x == 0.0 {
        return bessel_i(nu, 0.0);
    }
    if x <= 650.0 {
        if x <= 600.0 {
            return Ok(series_i(nu, x) * (-x).exp());
        }
        // log route dodges overflow of the unscaled series near 700.
        let (ln_val, sign) = series_i_log(nu, x);
        debug_assert!(sign > 0.0);
        return Ok((ln_val - x).exp());
    }
    // Large-argument expansion of exp(-x) I_nu(x).
    let mu4 = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..40 {
        let odd = (2 * m - 1) as f64;
        term *= -(mu4 - odd * odd) / (m as f64 * 8.0 * x);
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    Ok(sum / (2.0 * PI * x).sqrt())
}

fn series_i(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..2000 {
        term *= q / (k as f64 * (nu + k as f64));
        sum += term;
        if term < sum * EPS {
            break;
        }
    }
    (0.5 * x).powf(nu) / gamma_fn(nu + 1.0).expect("nu + 1 > 0") * sum
}

fn series_i_log(nu: f64, x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut log_rescale = 0.0f64;
    for k in 1..4000 {
        term *= q / (k as f64 * (nu + k as f64));
        sum += term;
        if sum > 1e280 {
            sum *= 1e-280;
            term *= 1e-280;
            log_rescale += 280.0 * std::f64::consts::LN_10;
        }
        if term < sum * EPS {
            break;
        }
    }
    let ln_pref = nu * (0.5 * x).ln() - super::gamma::ln_gamma(nu + 1.0).expect("nu + 1 > 0");
    (ln_pref + sum.ln() + log_rescale, 1.0)
}

/// Macdonald function K_nu(x) for x > 0, via the exponentially convergent
/// trapezoid rule on int_0^inf exp(-x cosh t) cosh(nu t) dt.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k requires x > 0, got {x}")));
    }
    Ok(k_trapezoid(nu.abs(), x, 0.0))
}

/// exp(x) K_nu(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k_scaled requires x > 0, got {x}")));
    }
    Ok(k_trapezoid(nu.abs(), x, x))
}

fn k_trapezoid(nu: f64, x: f64, shift: f64) -> f64 {
    // integrand exp(-x cosh t + shift) cosh(nu t); even in t, so the
    // trapezoid rule converges geometrically in 1/h.
    let h = 0.1f64;
    let target = 760.0 + shift + 40.0 * nu;
    let tmax = ((target / x).max(1.0)).acosh() + 1.0;
    let mut sum = 0.5 * (shift - x).exp();
    let mut t = h;
    while t <= tmax {
        let e = shift - x * t.cosh();
        if e > -760.0 {
            sum += e.exp() * (nu * t).cosh();
        }
        t += h;
    }
    sum * h
}

/// Spherical-mean factor: the average of exp(kappa cos(angle)) over the unit
/// sphere in dimension n, i.e. Gamma(n/2) (2/kappa)^{n/2-1} I_{n/2-1}(kappa).
pub fn sphere_mean_exp(n: u32, kappa: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("sphere_mean_exp: n >= 1".to_string()));
    }
    if kappa == 0.0 {
        return Ok(1.0);
    }
    if n == 1 {
        return Ok(kappa.cosh());
    }
    let half = n as f64 / 2.0;
    let order = half - 1.0;
    Ok(gamma_fn(half)? * (2.0 / kappa).powf(order) * bessel_i(order, kappa)?)
}
