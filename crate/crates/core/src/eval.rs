//! Evaluation of `P_j^{(a,a)}`, `c_{ell m}`, `Y_{ell,m}` and `X~^d_{ell,m}`.
//!
//! Everything is assembled in log space and only converted at the end. The
//! Ferrers form `Y = c' P^{-m}_{ell-1/2}` is equivalent but not implemented.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::index::{check_dimension, HalfInt, IndexPair};
use crate::scaled::ScaledReal;
use crate::specfun::gamma::lgamma;
use crate::specfun::quadrature::{AngleRule, CosThetaRule};

/// Abscissa `x` with `y = sqrt(1 - x^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    x: f64,
    y: f64,
}

impl EvalPoint {
    pub fn new(x: f64) -> Result<Self> {
        if !(x.abs() <= 1.0) {
            return Err(Error::Domain(format!("x must lie in [-1, 1], got {x}")));
        }
        Ok(EvalPoint { x, y: ((1.0 - x) * (1.0 + x)).sqrt() })
    }

    /// The point `x = cos(theta)`, `y = sin(theta)` for `theta` in `[0, pi]`.
    pub fn from_angle(theta: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!("angle must lie in [0, pi], got {theta}")));
        }
        if theta == 0.0 {
            return Ok(EvalPoint { x: 1.0, y: 0.0 });
        }
        if theta == std::f64::consts::PI {
            return Ok(EvalPoint { x: -1.0, y: 0.0 });
        }
        Ok(EvalPoint { x: theta.cos(), y: theta.sin() })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Mirror image `-x`, sharing `y` exactly.
    pub fn reflect(&self) -> Self {
        EvalPoint { x: -self.x, y: self.y }
    }

    /// `1 - x^2`, taken from `y` near the endpoints.
    pub fn one_minus_x2(&self) -> f64 {
        if self.x.abs() > 0.7 {
            self.y * self.y
        } else {
            (1.0 - self.x) * (1.0 + self.x)
        }
    }

    pub fn ln_one_minus_x2(&self) -> f64 {
        if self.x.abs() > 0.7 {
            2.0 * self.y.ln()
        } else {
            ((1.0 - self.x) * (1.0 + self.x)).ln()
        }
    }
}

// Renormalisation by 2^332 (about e^230) keeps the scaling exact.
const RESCALE_BITS: i32 = 332;
const RESCALE_UP: f64 = 8.749002899132048e99; // 2^332
const RESCALE_DOWN: f64 = 1.1429873912822749e-100; // 2^-332

#[inline]
fn ln_rescale(k: i32) -> f64 {
    k as f64 * RESCALE_BITS as f64 * LN_2
}

/// Forward recurrence for `P_n^{(alpha,alpha)}(x)`, `n = 0..=j_max`.
///
/// `visit(n, v, k)` receives the value `v * 2^(332 k)`.
fn run_recurrence<C, V>(j_max: usize, x: f64, mut coeffs: C, mut visit: V)
where
    C: FnMut(usize) -> (f64, f64),
    V: FnMut(usize, f64, i32),
{
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut k = 0i32;
    visit(0, cur, k);
    for n in 1..=j_max {
        let (a, b) = coeffs(n);
        let next = a * x * cur - b * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > RESCALE_UP {
            cur *= RESCALE_DOWN;
            prev *= RESCALE_DOWN;
            k += 1;
        } else if mag < RESCALE_DOWN && prev.abs() < RESCALE_DOWN && (mag > 0.0 || prev != 0.0) {
            cur *= RESCALE_UP;
            prev *= RESCALE_UP;
            k -= 1;
        }
        visit(n, cur, k);
    }
}

/// `(A_n, B_n)` with `P_n = A_n x P_{n-1} - B_n P_{n-2}` for `alpha = beta`.
#[inline]
fn coefficients(n: usize, alpha: f64) -> (f64, f64) {
    let nf = n as f64;
    let denom = nf * (nf + 2.0 * alpha);
    let a = (2.0 * nf + 2.0 * alpha - 1.0) * (nf + alpha) / denom;
    let b = (nf + alpha - 1.0) * (nf + alpha) / denom;
    (a, b)
}

#[inline]
fn scaled_from(v: f64, k: i32, ln_extra: f64) -> ScaledReal {
    if v == 0.0 {
        ScaledReal::ZERO
    } else {
        ScaledReal::from_parts(if v > 0.0 { 1 } else { -1 }, v.abs().ln() + ln_rescale(k) + ln_extra)
    }
}

pub(crate) fn jacobi_unchecked(j: usize, alpha: f64, x: f64) -> ScaledReal {
    let mut out = ScaledReal::ONE;
    run_recurrence(j, x, |n| coefficients(n, alpha), |n, v, k| {
        if n == j {
            out = scaled_from(v, k, 0.0);
        }
    });
    out
}

/// The ultraspherical Jacobi polynomial `P_j^{(alpha,alpha)}(x)`.
pub fn jacobi_symmetric(j: usize, alpha: HalfInt, x: f64) -> Result<ScaledReal> {
    if alpha.twice() < 0 {
        return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
    }
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain(format!("x must lie in [-1, 1], got {x}")));
    }
    Ok(jacobi_unchecked(j, alpha.value(), x))
}

/// `ln c` for `ell > 0`, `m >= 0` given as doubles.
fn ln_c(ell: f64, m: f64) -> f64 {
    0.5 * (ell.ln() + lgamma(ell - m + 0.5) + lgamma(ell + m + 0.5)) - m * LN_2 - lgamma(ell + 0.5)
}

pub(crate) fn ln_norm_const(p: IndexPair) -> f64 {
    ln_c(p.ell.value(), p.m.value())
}

/// `c_{ell m} = sqrt(ell G(ell-m+1/2) G(ell+m+1/2)) / (2^m G(ell+1/2))`.
pub fn norm_const(p: IndexPair) -> Result<ScaledReal> {
    p.check_in_i()?;
    Ok(ScaledReal::from_ln(ln_norm_const(p)))
}

/// `c (1-x^2)^{m/2 - e4/4} P_j(x)`; `e4` is minus four times the extra power.
pub(crate) fn assemble(p: IndexPair, pt: &EvalPoint, e4: i64) -> ScaledReal {
    let quarter_power = p.two_m() - e4;
    if pt.y == 0.0 && quarter_power > 0 {
        return ScaledReal::ZERO;
    }
    let ln_w = if quarter_power == 0 { 0.0 } else { quarter_power as f64 / 4.0 * pt.ln_one_minus_x2() };
    let poly = jacobi_unchecked(p.degree(), p.m.value(), pt.x);
    poly * ScaledReal::from_ln(ln_norm_const(p) + ln_w)
}

pub fn eval_y_scaled(p: IndexPair, pt: &EvalPoint) -> Result<ScaledReal> {
    p.check_in_i()?;
    Ok(assemble(p, pt, 0))
}

/// `Y_{ell,m}(x) = c (1-x^2)^{m/2} P_{ell-m-1/2}^{(m,m)}(x)`.
pub fn eval_y(p: IndexPair, pt: &EvalPoint) -> Result<f64> {
    Ok(eval_y_scaled(p, pt)?.to_f64_lossy())
}

pub fn eval_x_scaled(d: i64, p: IndexPair, pt: &EvalPoint) -> Result<ScaledReal> {
    check_dimension(d)?;
    p.check_in_i()?;
    // Net power of (1-x^2) is (2m - (d-2))/4.
    let net = p.two_m() - (d - 2);
    if pt.y == 0.0 && net < 0 {
        return Err(Error::Pole(format!("X~ for d={d} at {p} diverges at x = {}", pt.x)));
    }
    Ok(assemble(p, pt, d - 2))
}

/// `X~^d_{ell,m}(x) = (1-x^2)^{-(d-2)/4} Y_{ell,m}(x)`.
///
/// At `|x| = 1` the value is `0` when `m > (d-2)/2`, finite when
/// `m = (d-2)/2`, and a pole error otherwise.
pub fn eval_x(d: i64, p: IndexPair, pt: &EvalPoint) -> Result<f64> {
    Ok(eval_x_scaled(d, p, pt)?.to_f64_lossy())
}

/// `Y_{m+1/2+j, m}` for all `j = 0..=j_max` at once, sharing one recurrence.
#[derive(Clone, Debug)]
pub struct YColumn {
    m: HalfInt,
    ln_c: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl YColumn {
    pub fn new(m: HalfInt, j_max: usize) -> Result<Self> {
        if m.twice() < 0 {
            return Err(Error::InvalidIndex(format!("m must be >= 0, got {m}")));
        }
        let mf = m.value();
        let ln_c = (0..=j_max).map(|j| ln_c(mf + 0.5 + j as f64, mf)).collect();
        let (mut a, mut b) = (vec![0.0; j_max + 1], vec![0.0; j_max + 1]);
        for n in 1..=j_max {
            (a[n], b[n]) = coefficients(n, mf);
        }
        Ok(YColumn { m, ln_c, a, b })
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    pub fn j_max(&self) -> usize {
        self.ln_c.len() - 1
    }

    pub fn pair(&self, j: usize) -> IndexPair {
        IndexPair::raw(self.m + HalfInt::from_twice(2 * j as i64 + 1), self.m)
    }

    /// Writes `Y_{pair(j)}(x)` into `out[j]`.
    pub fn eval_into(&self, pt: &EvalPoint, out: &mut Vec<ScaledReal>) {
        out.clear();
        let n = self.ln_c.len();
        if pt.y == 0.0 && self.m.twice() > 0 {
            out.resize(n, ScaledReal::ZERO);
            return;
        }
        let ln_w = if self.m.twice() == 0 { 0.0 } else { 0.5 * self.m.value() * pt.ln_one_minus_x2() };
        run_recurrence(n - 1, pt.x, |i| (self.a[i], self.b[i]), |i, v, k| {
            out.push(scaled_from(v, k, self.ln_c[i] + ln_w));
        });
    }

    /// Plain `f64` values, saturating at zero on underflow.
    pub fn eval_f64_into(&self, pt: &EvalPoint, out: &mut Vec<f64>) {
        out.clear();
        let n = self.ln_c.len();
        if pt.y == 0.0 && self.m.twice() > 0 {
            out.resize(n, 0.0);
            return;
        }
        let ln_w = if self.m.twice() == 0 { 0.0 } else { 0.5 * self.m.value() * pt.ln_one_minus_x2() };
        run_recurrence(n - 1, pt.x, |i| (self.a[i], self.b[i]), |i, v, k| {
            let r = if v == 0.0 {
                0.0
            } else {
                v.signum() * (v.abs().ln() + ln_rescale(k) + self.ln_c[i] + ln_w).exp()
            };
            out.push(r);
        });
    }
}

/// Weights matching the parity of `m`: `Y^2` is a polynomial for integer `m`
/// and `Y^2 sin(theta)` a cosine polynomial for half-integer `m`.
pub fn angle_rule_for(m: HalfInt) -> AngleRule {
    if m.is_integer() {
        AngleRule::ClenshawCurtis
    } else {
        AngleRule::Trapezoid
    }
}

/// The cos-theta rule with `2 ceil(ell) + 16` nodes, exact for `Y^2`.
pub fn normalization_rule(ell: HalfInt) -> Result<CosThetaRule> {
    CosThetaRule::with_nodes(2 * ell.ceil().max(0) as usize + 16)
}

/// `int_{-1}^{1} Y_p Y_q dx` for pairs sharing `m`.
pub fn inner_product(p: IndexPair, q: IndexPair, rule: &CosThetaRule) -> Result<f64> {
    p.check_in_i()?;
    q.check_in_i()?;
    if p.m != q.m {
        return Err(Error::InvalidIndex(format!("{p} and {q} have different m")));
    }
    let weights = rule.weights(angle_rule_for(p.m));
    let mut sum = 0.0;
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let pt = EvalPoint::from_angle(rule.angle(k))?;
        sum += w * eval_y(p, &pt)? * eval_y(q, &pt)?;
    }
    Ok(sum)
}
