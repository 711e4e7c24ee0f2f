//! Confinement eigen-series, exact path-functional laws, stable
//! subordination, and Monte Carlo estimators for heat-type expectations with
//! capped singular potentials, plus the independent oracles (PDE solver,
//! quadrature identities) that cross-validate them.
//!
//! The Monte Carlo engine is batch data-parallel (rayon, behind the default
//! `parallel` feature) with a merge contract that makes results bit-identical
//! across worker counts; disabling the feature falls back to the sequential
//! driver with the same outputs.

pub mod confinement;
pub mod error;
pub mod fk_mc;
pub mod halfspace_stable;
pub mod laws;
pub mod pde_oracle;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod thresholds;

pub use error::{Error, Result};
pub use rng::RngStream;

use serde::{Deserialize, Serialize};

/// Positive integer spatial dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dim(u32);

impl Dim {
    pub fn new(n: u32) -> Result<Dim> {
        if n == 0 {
            return Err(Error::domain("dimension must be >= 1"));
        }
        Ok(Dim(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The radial Bessel order (N - 2) / 2 attached to this dimension.
    pub fn bessel_order(self) -> f64 {
        (self.0 as f64 - 2.0) / 2.0
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_validation_and_order() {
        assert!(Dim::new(0).is_err());
        assert_eq!(Dim::new(3).unwrap().bessel_order(), 0.5);
        assert_eq!(Dim::new(1).unwrap().bessel_order(), -0.5);
    }
}
