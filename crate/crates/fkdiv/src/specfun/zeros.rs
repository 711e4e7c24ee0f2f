//! Positive zeros of the Bessel function J_mu.
//!
//! Each zero is located from an asymptotic initial guess (large-k phase
//! `(k + mu/2 - 1/4) pi`, or the known first-zero bracket for k = 1), then
//! polished by Newton safeguarded inside a sign-change bracket with bisection
//! fallback. Zero tables are cached per order: built once, read many times.

use super::bessel::bessel_j_with_deriv;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Argument tolerance for the polished zeros.
const ZERO_TOL: f64 = 1e-12;

/// k-th positive zero of J_mu, k >= 1, mu > -1.
pub fn bessel_j_zero(mu: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("bessel_j_zero: k >= 1".to_string()));
    }
    Ok(zero_table(mu, k)?.zeros[k - 1])
}

/// Lower and upper bounds for the first zero:
/// sqrt((mu+1)(mu+5)) <= j_{mu,1} <= sqrt(mu+1) (sqrt(mu+2) + 1).
pub fn first_zero_bounds(mu: f64) -> Result<(f64, f64)> {
    if !(mu > -1.0) {
        return Err(Error::domain(format!("first_zero_bounds: mu > -1 required, got {mu}")));
    }
    let lower = ((mu + 1.0) * (mu + 5.0)).sqrt();
    let upper = (mu + 1.0).sqrt() * ((mu + 2.0).sqrt() + 1.0);
    Ok((lower, upper))
}

/// Large-k phase approximation of the k-th zero.
pub fn zero_asymptotic(mu: f64, k: usize) -> f64 {
    (k as f64 + 0.5 * mu - 0.25) * PI
}

/// Cached table of zeros of J_mu together with J'_mu evaluated there
/// (J'_mu(j) = -J_{mu+1}(j) at a zero).
pub struct ZeroTable {
    pub mu: f64,
    pub zeros: Vec<f64>,
    pub deriv_at_zero: Vec<f64>,
}

pub fn zero_table(mu: f64, min_len: usize) -> Result<Arc<ZeroTable>> {
    if !(mu > -1.0) {
        return Err(Error::domain(format!("zero_table: mu > -1 required, got {mu}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ZeroTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = mu.to_bits();
    let existing = cache.lock().unwrap().get(&key).cloned();
    if let Some(t) = &existing {
        if t.zeros.len() >= min_len {
            return Ok(t.clone());
        }
    }
    // Extend (or build) outside the lock; a racing thread at worst duplicates
    // the computation and the last insert wins with an identical table.
    let mut zeros = existing.as_ref().map(|t| t.zeros.clone()).unwrap_or_default();
    let mut derivs = existing.as_ref().map(|t| t.deriv_at_zero.clone()).unwrap_or_default();
    while zeros.len() < min_len {
        let k = zeros.len() + 1;
        let prev = zeros.last().copied();
        let (z, d) = locate_zero(mu, k, prev)?;
        zeros.push(z);
        derivs.push(d);
    }
    let table = Arc::new(ZeroTable { mu, zeros, deriv_at_zero: derivs });
    cache.lock().unwrap().insert(key, table.clone());
    Ok(table)
}

fn locate_zero(mu: f64, k: usize, prev: Option<f64>) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = bracket_zero(mu, k, prev)?;
    // Bisect to a comfortable Newton basin, then polish.
    let mut flo = bessel_j_with_deriv(mu, lo)?.0;
    for _ in 0..60 {
        if hi - lo < 1e-4 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = bessel_j_with_deriv(mu, mid)?.0;
        if (flo > 0.0) == (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..60 {
        let (f, fp) = bessel_j_with_deriv(mu, x)?;
        if fp == 0.0 {
            break;
        }
        let step = f / fp;
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let fnext = bessel_j_with_deriv(mu, next)?.0;
        if (flo > 0.0) == (fnext > 0.0) {
            lo = next;
            flo = fnext;
        } else {
            hi = next;
        }
        let done = (next - x).abs() < ZERO_TOL;
        x = next;
        if done {
            let (_, fp_final) = bessel_j_with_deriv(mu, x)?;
            return Ok((x, fp_final));
        }
    }
    Err(Error::numeric(format!(
        "bessel_j_zero did not converge for mu={mu}, k={k} (bracket [{lo}, {hi}])"
    )))
}

fn bracket_zero(mu: f64, k: usize, prev: Option<f64>) -> Result<(f64, f64)> {
    if k == 1 {
        let (lo, hi) = first_zero_bounds(mu)?;
        let a = (lo * 0.999).max(1e-8);
        let b = hi * 1.001 + 1e-6;
        let fa = bessel_j_with_deriv(mu, a)?.0;
        let fb = bessel_j_with_deriv(mu, b)?.0;
        if fa > 0.0 && fb < 0.0 {
            return Ok((a, b));
        }
        return scan_bracket(mu, a, 1);
    }
    let prev = prev.expect("zeros are located in increasing order");
    // Try the asymptotic guess when it is plausibly in the next gap.
    let g = zero_asymptotic(mu, k);
    if g > prev + 2.2 && g < prev + 4.2 {
        let a = (g - 1.4).max(prev + 0.2);
        let b = g + 1.4;
        let fa = bessel_j_with_deriv(mu, a)?.0;
        let fb = bessel_j_with_deriv(mu, b)?.0;
        let want = expected_sign(k);
        if fa * want > 0.0 && fb * want < 0.0 {
            return Ok((a, b));
        }
    }
    scan_bracket(mu, prev + 0.4, k)
}

/// Sign of J_mu on the interval (j_{mu,k-1}, j_{mu,k}).
fn expected_sign(k: usize) -> f64 {
    if k % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

fn scan_bracket(mu: f64, start: f64, k: usize) -> Result<(f64, f64)> {
    // Consecutive zeros are separated by more than 2.4 for every mu > -1, so
    // a 0.9 step cannot skip one.
    let want = expected_sign(k);
    let mut a = start;
    let mut fa = bessel_j_with_deriv(mu, a)?.0;
    let mut steps = 0;
    while fa * want <= 0.0 {
        // start landed past the sign flip (or on a zero); back off a little
        a = (a - 0.1).max(1e-10);
        fa = bessel_j_with_deriv(mu, a)?.0;
        steps += 1;
        if steps > 50 {
            return Err(Error::numeric(format!("scan_bracket lost the sign at mu={mu}, k={k}")));
        }
    }
    let mut b = a + 0.9;
    for _ in 0..200 {
        let fb = bessel_j_with_deriv(mu, b)?.0;
        if fa * want > 0.0 && fb * want < 0.0 {
            return Ok((a, b));
        }
        a = b;
        fa = fb;
        b += 0.9;
    }
    Err(Error::numeric(format!("scan_bracket found no sign change for mu={mu}, k={k}")))
}
