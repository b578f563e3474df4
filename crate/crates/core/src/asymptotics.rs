//! The implicit map `zeta_{ell,m}`, the ODE `L'' = Q L` for
//! `L = (1-x^2)^{1/2} Y`, and the decay argument beyond `x-bar`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::{assemble, EvalPoint};
use crate::index::{q_value, IndexPair};
use crate::scaled::ScaledReal;
use crate::specfun::integrate_adaptive;

const MAX_ITERATIONS: usize = 200;

/// A solved point of the implicit `zeta` equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaSolution {
    pub pair: IndexPair,
    pub x: f64,
    pub zeta: f64,
    /// `zeta - b^2`, kept separately to avoid cancellation near `x = a`.
    pub offset: f64,
    /// Absolute residual of the implicit equation.
    pub residual: f64,
}

/// `t - atan(t)` without cancellation for small `t`.
fn t_minus_atan(t: f64) -> f64 {
    if t < 0.1 {
        let t2 = t * t;
        let mut term = t * t2;
        let mut sum = 0.0;
        for k in 1..=12 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * term / (2 * k + 1) as f64;
            term *= t2;
        }
        sum
    } else {
        t - t.atan()
    }
}

// Taylor coefficients of w - tanh(w) in odd powers from w^3.
const W_TANH: [f64; 7] = [
    1.0 / 3.0,
    -2.0 / 15.0,
    17.0 / 315.0,
    -62.0 / 2835.0,
    1382.0 / 155925.0,
    -21844.0 / 6081075.0,
    929569.0 / 638512875.0,
];

/// `w - tanh(w)` without cancellation for small `w`.
fn w_minus_tanh(w: f64) -> f64 {
    if w < 0.1 {
        let w2 = w * w;
        W_TANH.iter().rev().fold(0.0, |acc, &c| acc * w2 + c) * w * w2
    } else {
        w - w.tanh()
    }
}

/// `int_{b^2}^{zeta} (xi - b^2)^{1/2} / (2 xi) d xi` for `zeta >= b^2`.
///
/// With `xi = b^2 (1 + t^2)` this is `b (t - atan t)`.
pub fn zeta_lhs_upper(b: f64, zeta: f64) -> f64 {
    let t = (zeta - b * b).max(0.0).sqrt() / b;
    b * t_minus_atan(t)
}

/// `int_{zeta}^{b^2} (b^2 - xi)^{1/2} / (2 xi) d xi` for `0 <= zeta <= b^2`.
///
/// With `xi = b^2 sech^2 w` this is `b (w - tanh w)`.
pub fn zeta_lhs_lower(b: f64, zeta: f64) -> f64 {
    if zeta <= 0.0 {
        return f64::INFINITY;
    }
    let u = ((b * b - zeta).max(0.0)).sqrt() / b;
    if u >= 1.0 {
        return f64::INFINITY;
    }
    b * w_minus_tanh(u.atanh())
}

fn rhs_upper(a: f64, x: f64) -> f64 {
    // s = a sin t removes the square-root endpoint at s = a.
    let a2 = a * a;
    let t0 = (x / a).min(1.0).asin();
    let f = |t: f64| {
        let (s, c) = t.sin_cos();
        a2 * c * c / (1.0 - a2 * s * s)
    };
    integrate_adaptive(f, t0, std::f64::consts::FRAC_PI_2, 1e-16, 1e-14).value
}

fn rhs_lower(a: f64, x: f64) -> f64 {
    if x >= 1.0 {
        return f64::INFINITY;
    }
    // s = a cosh t. Near the far end 1 - s^2 is rebuilt from 1 - x^2 so it
    // keeps full relative accuracy: 1 - s^2 = (1 - x^2) + a^2 sinh(t1 - t) sinh(t1 + t).
    let a2 = a * a;
    let t1 = (x / a).max(1.0).acosh();
    let one_minus_x2 = (1.0 - x) * (1.0 + x);
    let f = |t: f64| {
        let sh = t.sinh();
        a2 * sh * sh / (one_minus_x2 + a2 * (t1 - t).sinh() * (t1 + t).sinh())
    };
    integrate_adaptive(f, 0.0, t1, 1e-16, 1e-14).value
}

fn check_zeta_pair(p: IndexPair, eps: f64) -> Result<()> {
    p.check_in_i()?;
    if p.m.twice() == 0 {
        return Err(Error::DegenerateIndex(format!("{p}: b = 0 when m = 0")));
    }
    if p.m.value() > eps * p.ell.value() {
        return Err(Error::WrongRegime(format!("{p} has m > {eps} ell")));
    }
    Ok(())
}

/// Right side of the implicit equation on the branch containing `x`.
pub fn zeta_rhs(p: IndexPair, x: f64) -> Result<f64> {
    p.check_in_i()?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, 1], got {x}")));
    }
    let a = p.transition()?.a;
    Ok(if x <= a { rhs_upper(a, x) } else { rhs_lower(a, x) })
}

/// Safeguarded Newton for an increasing `g` with `g(lo) <= target <= g(hi)`.
fn solve_increasing<G>(mut g: G, target: f64, mut lo: f64, mut hi: f64, start: f64) -> Result<f64>
where
    G: FnMut(f64) -> (f64, f64),
{
    let tol = 4.0 * f64::EPSILON * target;
    let mut t = start.clamp(lo, hi);
    let mut last = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let (v, dv) = g(t);
        let f = v - target;
        last = f.abs();
        if last <= tol {
            return Ok(t);
        }
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(t);
        }
        let newton = t - f / dv;
        t = if dv > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: last })
}

/// Solves the implicit equation for `zeta(x)` with `x` in `[0, 1]`.
pub fn zeta_solve(p: IndexPair, x: f64, eps: f64) -> Result<ZetaSolution> {
    check_zeta_pair(p, eps)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [0, 1], got {x}")));
    }
    let tr = p.transition()?;
    let (a, b) = (tr.a, tr.b);
    let b2 = b * b;
    let solution = |zeta, offset, residual| ZetaSolution { pair: p, x, zeta, offset, residual };
    if x == a {
        return Ok(solution(b2, 0.0, 0.0));
    }
    if x == 1.0 {
        return Ok(solution(0.0, -b2, 0.0));
    }
    if x < a {
        let r = rhs_upper(a, x);
        let start = if r / b < 0.3 { (3.0 * r / b).cbrt() } else { r / b + 1.0 };
        let t = solve_increasing(
            |t| (b * t_minus_atan(t), b * t * t / (1.0 + t * t)),
            r,
            0.0,
            r / b + std::f64::consts::FRAC_PI_2,
            start,
        )?;
        let residual = (b * t_minus_atan(t) - r).abs();
        Ok(solution(b2 * (1.0 + t * t), b2 * t * t, residual))
    } else {
        let r = rhs_lower(a, x);
        let start = if r / b < 0.3 { (3.0 * r / b).cbrt() } else { r / b + 1.0 };
        let w = solve_increasing(
            |w| {
                let th = w.tanh();
                (b * w_minus_tanh(w), b * th * th)
            },
            r,
            0.0,
            r / b + 1.0,
            start,
        )?;
        let residual = (b * w_minus_tanh(w) - r).abs();
        let sech = 1.0 / w.cosh();
        let th = w.tanh();
        Ok(solution(b2 * sech * sech, -b2 * th * th, residual))
    }
}

/// `(zeta(x) - b^2) / (y^2 - b^2)` on the band `b/2 <= y <= b / sqrt(eps)`.
pub fn claim_ratio(p: IndexPair, x: f64, eps: f64) -> Result<f64> {
    check_zeta_pair(p, eps)?;
    let pt = EvalPoint::new(x)?;
    let tr = p.transition()?;
    let (a, b) = (tr.a, tr.b);
    let y = pt.y();
    if x < 0.0 || y < 0.5 * b || y > b / eps.sqrt() {
        return Err(Error::Domain(format!("y = {y} outside [b/2, b/sqrt(eps)] for {p}")));
    }
    if x == a {
        return Err(Error::Singular(format!("removable singularity at x = a for {p}")));
    }
    let sol = zeta_solve(p, x, eps)?;
    Ok(sol.offset / ((a - x) * (a + x)))
}

fn l_scaled(p: IndexPair, x: f64) -> Result<ScaledReal> {
    Ok(assemble(p, &EvalPoint::new(x)?, -2))
}

/// `L(x) = (1 - x^2)^{1/2} Y_{ell,m}(x)`.
pub fn l_function(p: IndexPair, x: f64) -> Result<f64> {
    p.check_in_i()?;
    Ok(l_scaled(p, x)?.to_f64_lossy())
}

fn check_ode_args(p: IndexPair, x: f64, h: f64) -> Result<()> {
    p.check_in_i()?;
    if !(1e-6..=1e-3).contains(&h) {
        return Err(Error::Domain(format!("h must lie in [1e-6, 1e-3], got {h}")));
    }
    if !(x.abs() + 2.0 * h < 1.0) {
        return Err(Error::Domain(format!("|x| + 2h must be < 1, got x = {x}, h = {h}")));
    }
    Ok(())
}

fn second_difference(p: IndexPair, x: f64, h: f64, center: f64) -> Result<f64> {
    let plus = l_scaled(p, x + h)?.to_f64_lossy();
    let minus = l_scaled(p, x - h)?.to_f64_lossy();
    Ok((plus - 2.0 * center + minus) / (h * h))
}

fn residual_of(p: IndexPair, x: f64, h: f64, lxx: f64, l: f64) -> f64 {
    let ql = q_value(p, x) * l;
    let ell = p.ell.value();
    let floor = h * h * l.abs().max(1.0) * ell.powi(4);
    (lxx - ql).abs() / (ql.abs() + floor)
}

/// Relative residual of `L'' = Q L` with a plain central difference of step `h`.
pub fn ode_residual_raw(p: IndexPair, x: f64, h: f64) -> Result<f64> {
    check_ode_args(p, x, h)?;
    let l = l_scaled(p, x)?.to_f64_lossy();
    let lxx = second_difference(p, x, h, l)?;
    Ok(residual_of(p, x, h, lxx, l))
}

/// Relative residual of `L'' = Q L`, with the second difference
/// Richardson-extrapolated over `h` and `h/2`.
///
/// The denominator is `|Q L| + h^2 max(1, |L|) ell^4`.
pub fn ode_residual(p: IndexPair, x: f64, h: f64) -> Result<f64> {
    check_ode_args(p, x, h)?;
    let l = l_scaled(p, x)?.to_f64_lossy();
    let coarse = second_difference(p, x, h, l)?;
    let fine = second_difference(p, x, 0.5 * h, l)?;
    let lxx = (4.0 * fine - coarse) / 3.0;
    Ok(residual_of(p, x, h, lxx, l))
}

fn check_beyond_xbar(p: IndexPair, x: f64) -> Result<f64> {
    p.check_in_i()?;
    let xbar = p
        .transition()?
        .xbar
        .ok_or_else(|| Error::UndefinedXbar(format!("{p}: needs m > 1")))?;
    if !(x > xbar && x < 1.0) {
        return Err(Error::Domain(format!("x = {x} must lie in (x-bar, 1) = ({xbar}, 1)")));
    }
    Ok(xbar)
}

/// Step used for `L'` in [`sign_check`].
pub const SIGN_STEP: f64 = 1e-6;

/// Whether `L(x) L'(x) < 0`; `None` when `|L|` or `|L'|` is within `10 h`
/// of zero, so that its sign is not meaningful.
pub fn sign_check(p: IndexPair, x: f64) -> Result<Option<bool>> {
    check_beyond_xbar(p, x)?;
    let h = SIGN_STEP;
    if x + h >= 1.0 {
        return Ok(None);
    }
    let l = l_function(p, x)?;
    let dl = (l_function(p, x + h)? - l_function(p, x - h)?) / (2.0 * h);
    if l.abs() <= 10.0 * h || dl.abs() <= 10.0 * h {
        return Ok(None);
    }
    Ok(Some(l * dl < 0.0))
}

/// `int_{x_*}^{x} Q(u)^{1/2} du`.
pub fn q_sqrt_integral(p: IndexPair, x_star: f64, x: f64) -> f64 {
    integrate_adaptive(|u| q_value(p, u).max(0.0).sqrt(), x_star, x, 1e-15, 1e-13).value
}

/// Logarithms of both sides of `|L(x)| <= |L(x_*)| exp(-int_{x_*}^x Q^{1/2})`.
pub fn titchmarsh_check_ln(p: IndexPair, x_star: f64, x: f64) -> Result<(f64, f64)> {
    check_beyond_xbar(p, x_star)?;
    check_beyond_xbar(p, x)?;
    if x < x_star {
        return Err(Error::Domain(format!("need x_* <= x, got {x_star} > {x}")));
    }
    let lhs = l_scaled(p, x)?.abs().log_mag();
    let rhs = l_scaled(p, x_star)?.abs().log_mag() - q_sqrt_integral(p, x_star, x);
    Ok((lhs, rhs))
}

/// Both sides of the decay inequality, as plain numbers.
pub fn titchmarsh_check(p: IndexPair, x_star: f64, x: f64) -> Result<(f64, f64)> {
    let (lhs, rhs) = titchmarsh_check_ln(p, x_star, x)?;
    Ok((lhs.exp(), rhs.exp()))
}
