//! Bessel functions of the first kind, `J_nu(z)`, for real `nu >= 0` and `z >= 0`.
//!
//! Two evaluation routes:
//!
//! * the ascending power series, used while `z <= max(12, 2 sqrt(nu + 1))`,
//!   where the terms never grow by more than a few orders of magnitude;
//! * Miller's backward recurrence from an order well inside the decaying
//!   region, normalized with the Neumann sum
//!   `(z/2)^mu = sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(z)`,
//!   where `mu` is the fractional part of `nu`.
//!
//! The switchover grows like `sqrt(nu)` rather than `nu/2`: for `z` between
//! the two the series terms peak near `exp(z^2 / (4 nu))` times the result,
//! which destroys every digit once `nu` is in the hundreds.

use crate::error::{Error, Result};
use crate::specfun::gamma::lgamma;

/// Largest supported order.
pub const MAX_ORDER: f64 = 2000.0;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 5000.0;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// `J_nu(z)` for `0 <= nu <= 2000`, `0 <= z <= 5000`.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    if nu.is_nan() || z.is_nan() || nu < 0.0 || z < 0.0 {
        return Err(Error::Domain(format!("bessel_j needs nu, z >= 0 (got nu = {nu}, z = {z})")));
    }
    if nu > MAX_ORDER || z > MAX_ARGUMENT {
        return Err(Error::UnsupportedRange(format!("nu = {nu}, z = {z}")));
    }
    Ok(j_unchecked(nu, z))
}

/// Argument below which the power series is used.
pub fn series_switchover(nu: f64) -> f64 {
    12.0f64.max(2.0 * (nu + 1.0).sqrt())
}

pub(crate) fn j_unchecked(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if z <= series_switchover(nu) {
        j_series(nu, z)
    } else {
        j_miller(nu, z)
    }
}

pub(crate) fn j_series(nu: f64, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let ln_prefactor = nu * (0.5 * z).ln() - lgamma(nu + 1.0);
    if ln_prefactor < -800.0 {
        return 0.0;
    }
    let q = -0.25 * z * z;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..2000 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum * ln_prefactor.exp()
}

pub(crate) fn j_miller(nu: f64, z: f64) -> f64 {
    let target = nu.floor() as usize;
    let mu = nu - nu.floor();
    let top = (nu.max(z) + 10.0 * z.cbrt() + 20.0).ceil() as usize;
    let top = top.max(target + 2).max(2);

    // h_i = Gamma(mu + i) / i!, carried downward for even offsets k = 2i
    let mut i = top / 2;
    let mut h = (lgamma(mu + i as f64) - lgamma(i as f64 + 1.0)).exp();

    let two_over_z = 2.0 / z;
    let mut f_above = 0.0f64; // f_{k+1}
    let mut f_cur = 1.0f64; // f_k
    let mut sum = 0.0f64;
    let mut at_target = 0.0f64;

    let mut k = top;
    loop {
        if k == target {
            at_target = f_cur;
        }
        if k % 2 == 0 {
            let weight = if k == 0 {
                (lgamma(mu + 1.0)).exp()
            } else {
                debug_assert_eq!(i, k / 2);
                (mu + k as f64) * h
            };
            sum += weight * f_cur;
            if i >= 2 {
                h *= i as f64 / (mu + i as f64 - 1.0);
            }
            i = i.saturating_sub(1);
        }
        if k == 0 {
            break;
        }
        let f_below = two_over_z * (mu + k as f64) * f_cur - f_above;
        f_above = f_cur;
        f_cur = f_below;
        k -= 1;
        if f_cur.abs() > RESCALE_ABOVE {
            f_cur *= RESCALE_BY;
            f_above *= RESCALE_BY;
            sum *= RESCALE_BY;
            at_target *= RESCALE_BY;
        }
    }
    at_target * (mu * (0.5 * z).ln()).exp() / sum
}
