//! Structural right-hand sides of the pointwise bounds for `Y` and `X~`.
//!
//! Every function returns the bare shape; the multiplicative constants are
//! measured by the harness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::EvalPoint;
use crate::index::{ln_binomial, IndexPair};

/// Regime split `epsilon`, decay constant `c` and decay threshold `K`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegimeParams {
    pub epsilon: f64,
    pub c: f64,
    pub k: f64,
}

impl Default for RegimeParams {
    fn default() -> Self {
        RegimeParams { epsilon: 0.5, c: 0.05, k: 2.0 }
    }
}

impl RegimeParams {
    pub fn new(epsilon: f64, c: f64, k: f64) -> Result<Self> {
        let rp = RegimeParams { epsilon, c, k };
        rp.validate()?;
        Ok(rp)
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(self.epsilon) {
            return Err(Error::Config(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if !open_unit(self.c) {
            return Err(Error::Config(format!("c must lie in (0, 1), got {}", self.c)));
        }
        if !(self.k > 1.0 && self.k.is_finite()) {
            return Err(Error::Config(format!("K must be a finite number > 1, got {}", self.k)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Hermite,
    Bessel,
}

impl Regime {
    /// `Hermite` when `m >= epsilon ell`, otherwise `Bessel`.
    pub fn of(p: IndexPair, epsilon: f64) -> Regime {
        if p.m.value() >= epsilon * p.ell.value() {
            Regime::Hermite
        } else {
            Regime::Bessel
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Hermite => "hermite",
            Regime::Bessel => "bessel",
        }
    }
}

/// Which exponent the Hermite decay branch uses.
///
/// `Corollary`: `(1-x^2)^{(c eps ell - (d-2)/2)_+ / 2}`.
/// `Theorem`: `(1-x^2)^{(c ell - (d-2)/4)_+}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecayForm {
    #[default]
    Corollary,
    Theorem,
}

impl DecayForm {
    pub fn exponent(&self, d: i64, ell: f64, rp: &RegimeParams) -> f64 {
        let shift = (d - 2) as f64;
        match self {
            DecayForm::Corollary => (rp.c * rp.epsilon * ell - shift / 2.0).max(0.0) / 2.0,
            DecayForm::Theorem => (rp.c * ell - shift / 4.0).max(0.0),
        }
    }
}

fn ln_pow_one_minus_x2(pt: &EvalPoint, e: f64) -> f64 {
    if e == 0.0 {
        0.0
    } else {
        e * pt.ln_one_minus_x2()
    }
}

/// `x^2 - a^2`, rewritten as `b^2 - y^2` near the endpoints.
fn x2_minus_a2(p: IndexPair, pt: &EvalPoint) -> f64 {
    let l = p.two_ell() as f64;
    let m = p.two_m() as f64;
    if pt.x().abs() > 0.7 {
        (m / l) * (m / l) - pt.one_minus_x2()
    } else {
        let a2 = (l - m) * (l + m) / (l * l);
        pt.x() * pt.x() - a2
    }
}

fn check_hermite(d: i64, p: IndexPair, rp: &RegimeParams) -> Result<()> {
    p.check_in_i_d(d)?;
    if p.m.value() < rp.epsilon * p.ell.value() {
        return Err(Error::WrongRegime(format!("{p} has m < {} ell", rp.epsilon)));
    }
    Ok(())
}

fn check_bessel(d: i64, p: IndexPair, rp: &RegimeParams) -> Result<()> {
    p.check_in_i_d(d)?;
    if p.m.value() > rp.epsilon * p.ell.value() {
        return Err(Error::WrongRegime(format!("{p} has m > {} ell", rp.epsilon)));
    }
    Ok(())
}

/// `ln((ell^-1 + |x^2 - a^2|)^{-1/4})`, with no regime or decay logic.
pub(crate) fn ln_hermite_core(p: IndexPair, pt: &EvalPoint) -> f64 {
    -0.25 * (1.0 / p.ell.value() + x2_minus_a2(p, pt).abs()).ln()
}

pub fn hermite_envelope_ln(d: i64, p: IndexPair, pt: &EvalPoint, rp: &RegimeParams, form: DecayForm) -> Result<f64> {
    check_hermite(d, p, rp)?;
    let base = ln_hermite_core(p, pt);
    let a = p.transition()?.a;
    if pt.x().abs() < rp.k * a {
        return Ok(base);
    }
    let e = form.exponent(d, p.ell.value(), rp);
    if pt.y() == 0.0 && e > 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let decay = -0.5 * pt.x().abs().ln() + ln_pow_one_minus_x2(pt, e);
    Ok(base.min(decay))
}

/// Hermite-regime envelope, using the corollary form of the decay branch
/// where `|x| >= K a`.
pub fn hermite_envelope(d: i64, p: IndexPair, pt: &EvalPoint, rp: &RegimeParams) -> Result<f64> {
    Ok(hermite_envelope_ln(d, p, pt, rp, DecayForm::Corollary)?.exp())
}

/// `ln(y^{-(d-2)/2} (ell^-2 (1+m)^{4/3} + |y^2 - b^2|)^{-1/4})`.
pub(crate) fn ln_bessel_core(d: i64, p: IndexPair, pt: &EvalPoint) -> f64 {
    let ell = p.ell.value();
    let m = p.m.value();
    let b = m / ell;
    let y = pt.y();
    let shift = -0.25 * ((1.0 + m).powf(4.0 / 3.0) / (ell * ell) + (y * y - b * b).abs()).ln();
    if d == 2 {
        shift
    } else {
        -((d - 2) as f64) / 2.0 * y.ln() + shift
    }
}

pub fn bessel_envelope_ln(d: i64, p: IndexPair, pt: &EvalPoint, rp: &RegimeParams) -> Result<f64> {
    check_bessel(d, p, rp)?;
    let base = ln_bessel_core(d, p, pt);
    let b = p.m.value() / p.ell.value();
    if pt.y() <= b / (2.0 * std::f64::consts::E) {
        let small = (d - 1) as f64 / 2.0 * p.ell.value().ln() - p.m.value() * std::f64::consts::LN_2;
        return Ok(base.min(small));
    }
    Ok(base)
}

/// Bessel-regime envelope; `+inf` at a pole.
pub fn bessel_envelope(d: i64, p: IndexPair, pt: &EvalPoint, rp: &RegimeParams) -> Result<f64> {
    Ok(bessel_envelope_ln(d, p, pt, rp)?.exp())
}

pub fn exp_small_y_bound_ln(p: IndexPair, pt: &EvalPoint) -> Result<f64> {
    p.check_in_i()?;
    let ell = p.ell.value();
    let m = p.m.value();
    if p.m.twice() == 0 {
        return Ok(0.5 * ell.ln());
    }
    if pt.y() == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let ln_b = (m / ell).ln();
    Ok(-(m + 0.5) * ln_b + m * (pt.y().ln() + 1.0))
}

/// `b^{-(m+1/2)} (y e)^m`; for `m = 0` the constant `sqrt(ell)`.
pub fn exp_small_y_bound(p: IndexPair, pt: &EvalPoint) -> Result<f64> {
    Ok(exp_small_y_bound_ln(p, pt)?.exp())
}

/// Second factor of the universal bound.
///
/// `Literal` is `ell^{1/2}` (integer `m`) or `(1-x^2)^{1/2} ell / m^{1/2}`
/// (half-integer `m`). `Sharp` is `ell` or `(1-x^2)^{1/2} ell^2 / (pi m)`,
/// which bounds `Y^2` with constant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SecondBound {
    Literal,
    #[default]
    Sharp,
}

/// The first shape is `(1-x^2)^m (ell / sqrt(m+1)) binom(ell - 1/2 + m, 2m)`;
/// this is its `x`-free part, `ln(ell / sqrt(m+1) binom(ell - 1/2 + m, 2m))`.
pub(crate) fn ln_first_universal_const(p: IndexPair) -> f64 {
    let ell = p.ell.value();
    let m = p.m.value();
    ell.ln() - 0.5 * (m + 1.0).ln() + ln_binomial(ell - 0.5 + m, 2.0 * m)
}

fn ln_first_universal_weight(p: IndexPair, pt: &EvalPoint) -> f64 {
    if p.m.twice() == 0 {
        0.0
    } else if pt.y() == 0.0 {
        f64::NEG_INFINITY
    } else {
        p.m.value() * pt.ln_one_minus_x2()
    }
}

/// [`universal_bound_ln`] with the first-shape constant supplied by the caller.
pub(crate) fn universal_ln_with_const(p: IndexPair, pt: &EvalPoint, form: SecondBound, first_const: f64) -> f64 {
    let first = ln_first_universal_weight(p, pt) + first_const;
    0.5 * first.min(ln_second_universal_sq(p, pt, form))
}

pub(crate) fn ln_second_universal_sq(p: IndexPair, pt: &EvalPoint, form: SecondBound) -> f64 {
    let ell = p.ell.value();
    let m = p.m.value();
    if p.m.is_integer() {
        match form {
            SecondBound::Literal => 0.5 * ell.ln(),
            SecondBound::Sharp => ell.ln(),
        }
    } else {
        let w = 0.5 * pt.ln_one_minus_x2();
        match form {
            SecondBound::Literal => w + ell.ln() - 0.5 * m.ln(),
            SecondBound::Sharp => w + 2.0 * ell.ln() - (std::f64::consts::PI * m).ln(),
        }
    }
}

pub fn universal_bound_ln(p: IndexPair, pt: &EvalPoint, form: SecondBound) -> Result<f64> {
    p.check_in_i()?;
    Ok(universal_ln_with_const(p, pt, form, ln_first_universal_const(p)))
}

/// Minimum of the square roots of both universal bound shapes, with the
/// sharp second factor.
pub fn universal_bound(p: IndexPair, pt: &EvalPoint) -> Result<f64> {
    Ok(universal_bound_ln(p, pt, SecondBound::Sharp)?.exp())
}

/// Same minimum with a chosen second factor.
pub fn universal_bound_with(p: IndexPair, pt: &EvalPoint, form: SecondBound) -> Result<f64> {
    Ok(universal_bound_ln(p, pt, form)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_y;
    use crate::index::{enumerate_all, harmonic_dim, sphere_measure, HalfInt};
    use proptest::prelude::*;

    fn pair(l: &str, m: &str) -> IndexPair {
        IndexPair::new(l.parse().unwrap(), m.parse().unwrap()).unwrap()
    }

    fn pt(x: f64) -> EvalPoint {
        EvalPoint::new(x).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn params_validation() {
        assert!(RegimeParams::default().validate().is_ok());
        assert!(RegimeParams::new(0.0, 0.05, 2.0).is_err());
        assert!(RegimeParams::new(0.5, 1.0, 2.0).is_err());
        assert!(RegimeParams::new(0.5, 0.05, 1.0).is_err());
        assert!(RegimeParams::new(0.5, 0.05, f64::NAN).is_err());
    }

    #[test]
    fn hermite_examples() {
        let rp = RegimeParams::default();
        let p = pair("21/2", "8");
        let a = p.transition().unwrap().a;
        let v = hermite_envelope(2, p, &pt(a), &rp).unwrap();
        assert!(close(v, 10.5f64.powf(0.25), 1e-12));
        let v = hermite_envelope(2, p, &pt(0.0), &rp).unwrap();
        let want = (2.0 / 21.0 + 185.0 / 441.0f64).powf(-0.25);
        assert!(close(v, want, 1e-14));
        assert!((v - 1.1806).abs() < 5e-5);
        // decay branch at the endpoint
        let p = pair("81/2", "38");
        assert!(2.0 * p.transition().unwrap().a < 1.0);
        for x in [-1.0, 1.0] {
            assert_eq!(hermite_envelope(2, p, &pt(x), &rp).unwrap(), 0.0);
        }
        assert!(matches!(hermite_envelope(2, pair("21/2", "2"), &pt(0.0), &rp), Err(Error::WrongRegime(_))));
        assert!(hermite_envelope(3, pair("21/2", "8"), &pt(0.0), &rp).is_err());
    }

    #[test]
    fn decay_forms() {
        let rp = RegimeParams::default();
        assert_eq!(DecayForm::Corollary.exponent(2, 100.0, &rp), 1.25);
        assert_eq!(DecayForm::Theorem.exponent(2, 100.0, &rp), 5.0);
        assert_eq!(DecayForm::Corollary.exponent(6, 10.0, &rp), 0.0);
        let p = pair("201/2", "90");
        let x = 0.99;
        let cor = hermite_envelope_ln(2, p, &pt(x), &rp, DecayForm::Corollary).unwrap();
        let thm = hermite_envelope_ln(2, p, &pt(x), &rp, DecayForm::Theorem).unwrap();
        assert!(thm <= cor);
    }

    #[test]
    fn bessel_examples() {
        let rp = RegimeParams::default();
        let p = pair("81/2", "4");
        let b = p.m.value() / p.ell.value();
        let e = EvalPoint::new((1.0 - b * b).sqrt()).unwrap();
        let v = bessel_envelope(2, p, &e, &rp).unwrap();
        assert!(close(v, 40.5f64.sqrt() * 5f64.powf(-1.0 / 3.0), 1e-10));
        for two_ell in [1, 7, 41] {
            let p = IndexPair::from_twice(two_ell, 0).unwrap();
            let v = bessel_envelope(2, p, &pt(1.0), &rp).unwrap();
            assert!(close(v, p.ell.value().sqrt(), 1e-14));
        }
        let v = bessel_envelope(3, pair("10", "1/2"), &pt(1.0 - 1e-12), &rp).unwrap();
        assert!(close(v, 10.0 * 0.5f64.sqrt(), 1e-14));
        assert!(matches!(bessel_envelope(2, pair("21/2", "8"), &pt(0.0), &rp), Err(Error::WrongRegime(_))));
        // pole away from the small-y branch cannot occur; base shape alone diverges
        assert!(ln_bessel_core(3, pair("10", "1/2"), &pt(1.0)).is_infinite());
    }

    #[test]
    fn exp_small_y_examples() {
        let p = pair("40", "7/2");
        let b = 7.0 / 80.0;
        let y = b / std::f64::consts::E;
        let e = EvalPoint::new((1.0 - y * y).sqrt()).unwrap();
        assert!(close(exp_small_y_bound(p, &e).unwrap(), b.powf(-0.5), 1e-10));
        let p = pair("4", "1/2");
        let y: f64 = 1.0 / 16.0;
        let e = EvalPoint::new((1.0 - y * y).sqrt()).unwrap();
        let want = 8.0 * (std::f64::consts::E / 16.0).sqrt();
        assert!(close(exp_small_y_bound(p, &e).unwrap(), want, 1e-12));
        assert!(close(exp_small_y_bound(pair("9/2", "0"), &pt(0.3)).unwrap(), 4.5f64.sqrt(), 1e-15));
        let mut last = 0.0;
        for i in 0..=100 {
            let x = 1.0 - i as f64 / 100.0;
            let v = exp_small_y_bound(pair("30", "5/2"), &pt(x)).unwrap();
            assert!(v >= last);
            last = v;
        }
    }

    #[test]
    fn universal_examples() {
        for two_ell in [1, 3, 17, 99] {
            let p = IndexPair::from_twice(two_ell, 0).unwrap();
            for x in [-1.0, 1.0] {
                assert!(close(universal_bound(p, &pt(x)).unwrap(), p.ell.value().sqrt(), 1e-13));
            }
        }
        // Literal integer-m factor is ell^{1/4}.
        let p = pair("9/2", "2");
        let second = 0.5 * ln_second_universal_sq(p, &pt(0.2), SecondBound::Literal);
        assert!(close(second.exp(), 4.5f64.powf(0.25), 1e-14));
        let p = pair("3", "3/2");
        let got = universal_bound_with(p, &pt(0.0), SecondBound::Literal).unwrap();
        let want = (3.0 / 2.5f64.sqrt() * 4.0).sqrt().min((3.0 / 1.5f64.sqrt()).sqrt());
        assert!(close(got, want, 1e-14));
    }

    #[test]
    fn universal_bound_dominates_with_unit_constant() {
        for p in enumerate_all(HalfInt::from_int(40)) {
            for i in 0..=40 {
                let x = -1.0 + i as f64 / 20.0;
                let e = pt(x.clamp(-1.0, 1.0));
                let y = eval_y(p, &e).unwrap().abs();
                assert!(y <= universal_bound(p, &e).unwrap() * (1.0 + 1e-10), "{p} x={x}");
            }
        }
    }

    #[test]
    fn dimension_inequality_holds() {
        // Y^2 <= (1-x^2)^{(d-2)/2} dim_d(ell)/dim_{d-1}(m) sigma_{d-1}/sigma_d on I_d.
        for d in 2..=6i64 {
            let ratio = sphere_measure(d - 1).unwrap() / sphere_measure(d).unwrap();
            for p in crate::index::enumerate_indices(d, HalfInt::from_int(25)).unwrap() {
                let dims = harmonic_dim(d, p.ell).unwrap() as f64 / harmonic_dim(d - 1, p.m).unwrap() as f64;
                for i in 1..40 {
                    let x = -1.0 + i as f64 / 20.0;
                    let e = pt(x);
                    let y = eval_y(p, &e).unwrap();
                    let rhs = e.one_minus_x2().powf((d - 2) as f64 / 2.0) * dims * ratio;
                    assert!(y * y <= rhs * (1.0 + 1e-10), "d={d} {p} x={x}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn envelopes_are_even(two_ell in 2i64..400, frac in 0.0f64..1.0, x in -1.0f64..1.0) {
            let rp = RegimeParams::default();
            let mut two_m = (frac * (two_ell - 1) as f64) as i64;
            if (two_ell - two_m) % 2 == 0 {
                two_m -= 1;
            }
            prop_assume!(two_m >= 0);
            let p = IndexPair::from_twice(two_ell, two_m).unwrap();
            let (e, r) = (pt(x), pt(-x));
            let d = 2 + (p.two_m() % 2);
            let pairs = [
                (universal_bound(p, &e).unwrap(), universal_bound(p, &r).unwrap()),
                (exp_small_y_bound(p, &e).unwrap(), exp_small_y_bound(p, &r).unwrap()),
            ];
            for (u, v) in pairs {
                prop_assert!((u - v).abs() <= 1e-14 * u.abs());
            }
            if p.is_in_i_d(d) {
                let (u, v) = match Regime::of(p, rp.epsilon) {
                    Regime::Hermite => (hermite_envelope(d, p, &e, &rp).unwrap(), hermite_envelope(d, p, &r, &rp).unwrap()),
                    Regime::Bessel => (bessel_envelope(d, p, &e, &rp).unwrap(), bessel_envelope(d, p, &r, &rp).unwrap()),
                };
                prop_assert!((u - v).abs() <= 1e-14 * u.abs());
            }
        }
    }
}
