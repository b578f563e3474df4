//! The addition-theorem sum rule
//! `sum_m X~_{ell,m}(x)^2 dim H^m(S^{d-1}) / |S^{d-1}| = dim H^ell(S^d) / |S^d|`.

use crate::error::{Error, Result};
use crate::eval::{eval_x_scaled, EvalPoint};
use crate::index::{check_dimension, harmonic_dim, ln_sphere_measure, HalfInt, IndexPair};

/// Both sides of the sum rule at `x`; the left sums over `m` in `N_{d-1}`, `m < ell`.
pub fn projection_identity_check(d: i64, ell: HalfInt, x: f64) -> Result<(f64, f64)> {
    check_dimension(d)?;
    if !ell.is_in_n_k(d) {
        return Err(Error::InvalidIndex(format!("ell = {ell} is not in N_{d}")));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("x must lie in (-1, 1), got {x}")));
    }
    let pt = EvalPoint::new(x)?;
    let ln_inner = ln_sphere_measure(d - 1);
    let mut lhs = 0.0;
    let mut two_m = d - 2;
    while two_m < ell.twice() {
        let m = HalfInt::from_twice(two_m);
        let p = IndexPair::new(ell, m)?;
        let xt = eval_x_scaled(d, p, &pt)?;
        if !xt.is_zero() {
            let dim = harmonic_dim(d - 1, m)? as f64;
            lhs += (2.0 * xt.log_mag() + dim.ln() - ln_inner).exp();
        }
        two_m += 2;
    }
    let rhs = (harmonic_dim(d, ell)? as f64).ln() - ln_sphere_measure(d);
    Ok((lhs, rhs.exp()))
}

/// The seven abscissae used by the projection suite.
pub const PROJECTION_XS: [f64; 7] = [-0.999, -0.9, -0.3, 0.0, 0.3, 0.9, 0.999];

/// Worst relative error and worst relative spread over `xs`, for every
/// `ell` in `N_d` up to `ell_max`.
pub fn projection_worst(d: i64, ell_max: HalfInt, xs: &[f64]) -> Result<(f64, f64)> {
    let (mut worst_err, mut worst_spread) = (0.0f64, 0.0f64);
    let mut two_ell = d - 1;
    while two_ell <= ell_max.twice() {
        let ell = HalfInt::from_twice(two_ell);
        let (mut lo, mut hi, mut rhs) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &x in xs {
            let (l, r) = projection_identity_check(d, ell, x)?;
            worst_err = worst_err.max((l / r - 1.0).abs());
            lo = lo.min(l);
            hi = hi.max(l);
            rhs = r;
        }
        if !xs.is_empty() {
            worst_spread = worst_spread.max((hi - lo) / rhs);
        }
        two_ell += 2;
    }
    Ok((worst_err, worst_spread))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn single_term_examples() {
        for x in [-0.7, 0.0, 0.2, 0.999] {
            let (l, r) = projection_identity_check(2, HalfInt::HALF, x).unwrap();
            assert!((l - 1.0 / (4.0 * PI)).abs() < 1e-15 && (r - 1.0 / (4.0 * PI)).abs() < 1e-15);
            let (l, r) = projection_identity_check(3, HalfInt::ONE, x).unwrap();
            let want = 1.0 / (2.0 * PI * PI);
            assert!((l - want).abs() < 1e-15 && (r - want).abs() < 1e-15, "{l} {r}");
        }
    }

    #[test]
    fn left_side_is_flat_in_x() {
        for d in 2..=5 {
            let ell = HalfInt::from_twice(2 * 12 + d - 1);
            let (err, spread) = projection_worst(d, ell, &PROJECTION_XS).unwrap();
            assert!(err <= 1e-8 && spread <= 1e-8, "d={d}: {err} {spread}");
        }
    }

    #[test]
    fn membership_and_domain() {
        assert!(matches!(projection_identity_check(2, HalfInt::ONE, 0.0), Err(Error::InvalidIndex(_))));
        assert!(matches!(projection_identity_check(3, HalfInt::ONE, 1.0), Err(Error::Domain(_))));
        assert!(matches!(projection_identity_check(1, HalfInt::ONE, 0.0), Err(Error::InvalidDimension(1))));
    }
}
