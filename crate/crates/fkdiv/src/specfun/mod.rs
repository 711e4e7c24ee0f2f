//! Scalar special functions underlying every series, density, and constant
//! in the crate. All operations are pure and reentrant; the zero tables are
//! the only shared state (built once, read many).

mod bessel;
mod gamma;
mod kernel;
mod zeros;

pub use bessel::{
    bessel_i, bessel_i_scaled, bessel_j, bessel_j_over_pow, bessel_j_with_deriv, bessel_k,
    bessel_k_scaled, sphere_mean_exp,
};
pub use gamma::{erf, erfc, gamma_fn, gamma_p, gamma_q, inv_normal_cdf, ln_gamma, normal_cdf};
pub use kernel::{
    ball_volume, gauss1, gauss_kernel, gauss_kernel_radial, gaussian_ball_mass, sphere_area,
};
pub use zeros::{bessel_j_zero, first_zero_bounds, zero_asymptotic, zero_table, ZeroTable};
