//! Half-integer index arithmetic, the index sets `I` and `I_d`, and the
//! closed-form quantities attached to an index pair: transition points,
//! the potential `Q` of the Liouville form, Laplace–Beltrami eigenvalues,
//! harmonic dimensions and sphere measures.
//!
//! All membership tests run on doubled integers, so they are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma::lgamma;

/// An exact element of `Z/2`, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Membership in `N_k = N + (k-1)/2`.
    pub const fn is_in_n_k(self, k: i64) -> bool {
        let shifted = self.twice - (k - 1);
        shifted >= 0 && shifted % 2 == 0
    }

    /// Smallest integer not below the value.
    pub fn ceil(self) -> i64 {
        self.twice.div_euclid(2) + self.twice.rem_euclid(2)
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"` or `"2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidIndex(format!("cannot parse {s:?} as a half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "2" => Ok(HalfInt::from_twice(num)),
                "1" => Ok(HalfInt::from_int(num)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        let v: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * v;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > 9.0e15 {
            return Err(bad());
        }
        Ok(HalfInt::from_twice(twice as i64))
    }
}

/// An index pair `(ell, m)`.
///
/// [`IndexPair::new`] only builds members of `I`; [`IndexPair::raw`] skips
/// the check so that membership can be tested on arbitrary pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub ell: HalfInt,
    pub m: HalfInt,
}

impl IndexPair {
    pub fn new(ell: HalfInt, m: HalfInt) -> Result<Self> {
        let p = IndexPair { ell, m };
        p.check_in_i()?;
        Ok(p)
    }

    pub fn from_twice(two_ell: i64, two_m: i64) -> Result<Self> {
        Self::new(HalfInt::from_twice(two_ell), HalfInt::from_twice(two_m))
    }

    pub const fn raw(ell: HalfInt, m: HalfInt) -> Self {
        IndexPair { ell, m }
    }

    /// `ell - m - 1/2` is a nonnegative integer and `m >= 0`.
    pub fn is_in_i(&self) -> bool {
        let diff = self.ell.twice() - self.m.twice();
        self.m.twice() >= 0 && diff >= 1 && diff % 2 == 1
    }

    /// Membership in `I_d`: additionally `ell` in `N_d` and `m` in `N_{d-1}`.
    pub fn is_in_i_d(&self, d: i64) -> bool {
        d >= 2 && self.is_in_i() && self.ell.is_in_n_k(d) && self.m.is_in_n_k(d - 1)
    }

    pub fn check_in_i(&self) -> Result<()> {
        if self.is_in_i() {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!("({}, {}) is not in I", self.ell, self.m)))
        }
    }

    pub fn check_in_i_d(&self, d: i64) -> Result<()> {
        check_dimension(d)?;
        if self.is_in_i_d(d) {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!(
                "({}, {}) is not in I_{d}",
                self.ell, self.m
            )))
        }
    }

    /// Polynomial degree `j = ell - m - 1/2`. Only meaningful on `I`.
    pub fn degree(&self) -> usize {
        debug_assert!(self.is_in_i());
        ((self.ell.twice() - self.m.twice() - 1) / 2) as usize
    }

    pub fn two_ell(&self) -> i64 {
        self.ell.twice()
    }

    pub fn two_m(&self) -> i64 {
        self.m.twice()
    }

    pub fn transition(&self) -> Result<TransitionData> {
        transition_points(*self)
    }

    /// Exact check of `a^2 >= 1/(2 ell)`, i.e. `(L-M)(L+M) >= L` on doubled values.
    pub fn satisfies_a2_lower_bound(&self) -> bool {
        let l = self.ell.twice() as i128;
        let m = self.m.twice() as i128;
        (l - m) * (l + m) >= l
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ell, self.m)
    }
}

/// Transition geometry of a pair: `a`, `b = m/ell`, and `x-bar` (only for `m > 1`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionData {
    pub a: f64,
    pub b: f64,
    pub xbar: Option<f64>,
}

pub(crate) fn check_dimension(d: i64) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// All pairs of `I_d` with `ell <= ell_max`, sorted by `(ell, m)`.
pub fn enumerate_indices(d: i64, ell_max: HalfInt) -> Result<Vec<IndexPair>> {
    check_dimension(d)?;
    let mut out = Vec::new();
    let mut two_ell = d - 1;
    while two_ell <= ell_max.twice() {
        let mut two_m = d - 2;
        while two_m < two_ell {
            out.push(IndexPair::raw(HalfInt::from_twice(two_ell), HalfInt::from_twice(two_m)));
            two_m += 2;
        }
        two_ell += 2;
    }
    Ok(out)
}

/// All pairs of `I` (every dimension at once) with `ell <= ell_max`, sorted by `(ell, m)`.
pub fn enumerate_all(ell_max: HalfInt) -> Vec<IndexPair> {
    let mut out = Vec::new();
    for two_ell in 1..=ell_max.twice() {
        let mut two_m = (two_ell - 1) % 2;
        while two_m < two_ell {
            out.push(IndexPair::raw(HalfInt::from_twice(two_ell), HalfInt::from_twice(two_m)));
            two_m += 2;
        }
    }
    out
}

pub fn transition_points(p: IndexPair) -> Result<TransitionData> {
    if p.ell.twice() == 0 {
        return Err(Error::DegenerateIndex("ell = 0".into()));
    }
    p.check_in_i()?;
    Ok(transition_unchecked(p))
}

/// The defining formulas for any `0 <= m < ell`, membership unchecked.
pub(crate) fn transition_unchecked(p: IndexPair) -> TransitionData {
    let l = p.ell.twice() as i128;
    let m = p.m.twice() as i128;
    let lf = l as f64;
    let b = m as f64 / lf;
    let a = (((l - m) * (l + m)) as f64).sqrt() / lf;
    let xbar = if p.m.twice() > 2 {
        Some((((l * l - m * m + 3) as f64) / ((l * l - 1) as f64)).sqrt())
    } else {
        None
    };
    TransitionData { a, b, xbar }
}

/// `Q(x) = (ell^2 (x^2 - a^2) - (3 + x^2)/4) / (1 - x^2)^2`, valid for any pair.
pub(crate) fn q_value(p: IndexPair, x: f64) -> f64 {
    let l = p.ell.twice() as f64;
    let m = p.m.twice() as f64;
    let x2 = x * x;
    let one_minus = (1.0 - x) * (1.0 + x);
    // 4 * numerator = (L^2 - 1) x^2 - (L^2 - M^2 + 3)
    let num = ((l * l - 1.0) * x2 - (l * l - m * m + 3.0)) / 4.0;
    num / (one_minus * one_minus)
}

/// The potential `Q_{ell,m}(x) = (ell^2 - 1/4)(x^2 - xbar^2)/(1-x^2)^2`.
pub fn q_factor(p: IndexPair, x: f64) -> Result<f64> {
    p.check_in_i()?;
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("|x| must be < 1, got {x}")));
    }
    if p.m.twice() <= 2 {
        return Err(Error::UndefinedXbar(p.m.to_string()));
    }
    Ok(q_value(p, x))
}

/// Eigenvalue `(ell + (d-1)/2)(ell - (d-1)/2)` of the Laplace–Beltrami operator on `S^d`.
pub fn laplace_eigenvalue(d: i64, ell: HalfInt) -> Result<f64> {
    check_dimension(d)?;
    if !ell.is_in_n_k(d) {
        return Err(Error::InvalidIndex(format!("{ell} is not in N_{d}")));
    }
    let two_l = ell.twice() as i128;
    let k = (d - 1) as i128;
    // (2l + k)(2l - k) / 4 is an exact integer or quarter-integer
    Ok(((two_l + k) * (two_l - k)) as f64 / 4.0)
}

/// Exact binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<u128> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc
            .checked_mul(n - i)
            .ok_or_else(|| Error::IntegerOverflow(format!("binomial({n}, {k})")))?
            / (i + 1);
    }
    Ok(acc)
}

/// Natural log of `C(n, k)` for real arguments via log-gamma.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    lgamma(n + 1.0) - lgamma(k + 1.0) - lgamma(n - k + 1.0)
}

/// Dimension of the space of spherical harmonics `H^ell(S^d)`, `d >= 1`.
pub fn harmonic_dim(d: i64, ell: HalfInt) -> Result<u128> {
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    if !ell.is_in_n_k(d) {
        return Err(Error::InvalidIndex(format!("{ell} is not in N_{d}")));
    }
    let lp = (ell.twice() - (d - 1)) / 2;
    let first = binomial(lp + d, lp)?;
    let second = binomial(lp + d - 2, lp - 2)?;
    Ok(first - second)
}

/// Surface measure of the unit sphere `S^d` in `R^{d+1}`.
pub fn sphere_measure(d: i64) -> Result<f64> {
    if d < 1 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(ln_sphere_measure(d).exp())
}

pub(crate) fn ln_sphere_measure(d: i64) -> f64 {
    let df = d as f64;
    (df + 1.0).ln() + 0.5 * (df + 1.0) * std::f64::consts::PI.ln() - lgamma(0.5 * (df + 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn pair(two_ell: i64, two_m: i64) -> IndexPair {
        IndexPair::from_twice(two_ell, two_m).unwrap()
    }

    // Independent enumeration: scan every half-integer pair and keep the
    // members by definition.
    fn brute_force_i_d(d: i64, two_ell_max: i64) -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for two_ell in 0..=two_ell_max {
            for two_m in 0..=two_ell {
                let ell_ok = two_ell - (d - 1) >= 0 && (two_ell - (d - 1)) % 2 == 0;
                let m_ok = two_m - (d - 2) >= 0 && (two_m - (d - 2)) % 2 == 0;
                let deg = two_ell - two_m - 1;
                if ell_ok && m_ok && deg >= 0 && deg % 2 == 0 {
                    v.push((two_ell, two_m));
                }
            }
        }
        v
    }

    #[test]
    fn halfint_parsing_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), h(3));
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), h(3));
        assert_eq!("2".parse::<HalfInt>().unwrap(), h(4));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), h(-1));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.3".parse::<HalfInt>().is_err());
        assert_eq!(h(3).to_string(), "3/2");
        assert_eq!(h(4).to_string(), "2");
        assert_eq!(h(3).ceil(), 2);
        assert_eq!(h(4).ceil(), 2);
        assert_eq!(h(-1).ceil(), 0);
    }

    #[test]
    fn n_k_membership() {
        assert!(h(1).is_in_n_k(2));
        assert!(!h(0).is_in_n_k(2));
        assert!(h(0).is_in_n_k(1));
        assert!(h(2).is_in_n_k(3));
        assert!(!h(1).is_in_n_k(3));
        assert!(h(3).is_in_n_k(4));
        assert!(!h(1).is_in_n_k(4));
    }

    #[test]
    fn enumerate_examples() {
        let v = enumerate_indices(2, h(3)).unwrap();
        assert_eq!(v, vec![pair(1, 0), pair(3, 0), pair(3, 2)]);
        let v = enumerate_indices(3, HalfInt::ONE).unwrap();
        assert_eq!(v, vec![pair(2, 1)]);
        assert!(enumerate_indices(2, HalfInt::ZERO).unwrap().is_empty());
        assert_eq!(enumerate_indices(1, h(4)), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for d in 2..=7 {
            let got: Vec<_> = enumerate_indices(d, h(41))
                .unwrap()
                .iter()
                .map(|p| (p.two_ell(), p.two_m()))
                .collect();
            assert_eq!(got, brute_force_i_d(d, 41), "d = {d}");
            for p in enumerate_indices(d, h(41)).unwrap() {
                assert!(p.is_in_i_d(d));
                let diff = p.two_ell() - p.two_m();
                assert!(diff > 0 && diff % 2 == 1);
            }
        }
    }

    #[test]
    fn enumerate_all_is_union_of_two_and_three() {
        let all = enumerate_all(h(30));
        let mut union = enumerate_indices(2, h(30)).unwrap();
        union.extend(enumerate_indices(3, h(30)).unwrap());
        union.sort();
        assert_eq!(all, union);
        assert!(all.iter().all(|p| p.is_in_i()));
    }

    #[test]
    fn membership_rejects() {
        assert!(!IndexPair::raw(h(2), h(0)).is_in_i());
        assert!(!IndexPair::raw(h(1), h(1)).is_in_i());
        assert!(!IndexPair::raw(h(3), h(-1)).is_in_i());
        assert!(IndexPair::from_twice(4, 0).is_err());
        // in I but not in I_3 (ell half-odd)
        assert!(!pair(3, 0).is_in_i_d(3));
        assert!(pair(3, 0).is_in_i_d(2));
    }

    #[test]
    fn transition_examples() {
        let t = transition_points(pair(1, 0)).unwrap();
        assert_eq!((t.a, t.b, t.xbar), (1.0, 0.0, None));
        // (5/2, 3/2) and (7/2, 5/2) are outside I; the formulas still apply.
        let raw = |l, m| IndexPair::raw(h(l), h(m));
        assert!(transition_points(raw(5, 3)).is_err());
        let t = transition_unchecked(raw(5, 3));
        assert!((t.a - 0.8).abs() < 1e-15 && (t.b - 0.6).abs() < 1e-15);
        assert!((t.xbar.unwrap() - (19.0f64 / 24.0).sqrt()).abs() < 1e-15);
        let t = transition_unchecked(raw(7, 5));
        assert!((t.xbar.unwrap() - 0.75).abs() < 1e-15);
        let t = transition_points(pair(7, 6)).unwrap();
        assert!((t.xbar.unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(transition_points(pair(5, 2)).unwrap().xbar, None);
    }

    #[test]
    fn q_factor_examples() {
        // (7/2, 5/2) is outside I, so the arithmetic is checked on q_value.
        let raw = IndexPair::raw(h(7), h(5));
        assert!((q_value(raw, 0.0) + 27.0 / 4.0).abs() < 1e-13);
        assert!(q_value(raw, 0.75).abs() < 1e-13);
        assert!(q_factor(raw, 0.0).is_err());
        let p = pair(7, 6);
        let xbar = p.transition().unwrap().xbar.unwrap();
        assert!(q_factor(p, xbar).unwrap().abs() < 1e-13);
        assert!((q_factor(p, 0.0).unwrap() + 4.0).abs() < 1e-13);
        assert!(q_factor(p, 1.0 - 1e-9).unwrap() > 1e15);
        assert!(matches!(q_factor(p, 1.0), Err(Error::Domain(_))));
        assert!(matches!(q_factor(pair(3, 2), 0.1), Err(Error::UndefinedXbar(_))));
        // both closed forms agree
        for &x in &[0.1, 0.5, 0.9, -0.3] {
            let t = transition_points(p).unwrap();
            let l = 3.5f64;
            let alt = (l * l - 0.25) * (x * x - t.xbar.unwrap().powi(2)) / (1.0 - x * x).powi(2);
            assert!((q_factor(p, x).unwrap() - alt).abs() < 1e-12 * alt.abs().max(1.0));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(laplace_eigenvalue(2, h(3)).unwrap(), 2.0);
        assert_eq!(laplace_eigenvalue(5, h(4)).unwrap(), 0.0);
        assert_eq!(laplace_eigenvalue(3, h(4)).unwrap(), 3.0);
        assert!(laplace_eigenvalue(3, h(3)).is_err());
    }

    #[test]
    fn dimension_examples() {
        for d in 1..8 {
            assert_eq!(harmonic_dim(d, h(d - 1)).unwrap(), 1);
        }
        assert_eq!(harmonic_dim(2, h(5)).unwrap(), 5);
        assert_eq!(harmonic_dim(3, h(6)).unwrap(), 9);
        assert_eq!(harmonic_dim(1, h(0)).unwrap(), 1);
        assert_eq!(harmonic_dim(1, h(2)).unwrap(), 2);
        assert_eq!(harmonic_dim(1, h(10)).unwrap(), 2);
        assert!(harmonic_dim(2, h(2)).is_err());
    }

    #[test]
    fn dimension_product_form_agrees() {
        for d in 2..9i64 {
            for lp in 0..200i64 {
                let ell = h(2 * lp + d - 1);
                let dim = harmonic_dim(d, ell).unwrap();
                let prod = (2 * lp + d - 1) as u128 * binomial(lp + d - 2, d - 2).unwrap();
                assert_eq!(prod % (d - 1) as u128, 0);
                assert_eq!(dim, prod / (d - 1) as u128, "d={d} l'={lp}");
            }
        }
    }

    #[test]
    fn binomial_exact_and_log_route() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(5, 7).unwrap(), 0);
        assert_eq!(binomial(0, -1).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
        for n in 0..120 {
            for k in 0..=n {
                let exact = binomial(n, k).unwrap() as f64;
                let via_log = ln_binomial(n as f64, k as f64).exp();
                assert!((via_log / exact - 1.0).abs() < 1e-12, "n={n} k={k}");
            }
        }
        assert!(binomial(400, 200).is_err());
    }

    #[test]
    fn sphere_measure_examples() {
        assert!((sphere_measure(1).unwrap() - 2.0 * PI).abs() < 1e-13);
        assert!((sphere_measure(2).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_measure(3).unwrap() - 2.0 * PI * PI).abs() < 1e-12);
        assert!(sphere_measure(0).is_err());
    }

    #[test]
    fn transition_invariants_exhaustive() {
        for p in enumerate_all(h(400)) {
            let t = p.transition().unwrap();
            assert!(p.satisfies_a2_lower_bound(), "{p}");
            let s = t.a * t.a + t.b * t.b;
            assert!((s - 1.0).abs() <= 2.0 * f64::EPSILON, "{p}: {s}");
            if let Some(xb) = t.xbar {
                assert!(xb >= t.a && xb <= 8.0 * t.a && xb < 1.0, "{p}");
            }
        }
    }

    #[test]
    fn dimension_band_is_finite() {
        // dim(H^ell(S^d)) / ell^(d-1) over l' in [1, 500] stays inside a band
        for d in 1..=6i64 {
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for lp in 1..=500i64 {
                let ell = h(2 * lp + d - 1);
                let ratio = harmonic_dim(d, ell).unwrap() as f64 / ell.value().powi(d as i32 - 1);
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
            assert!(lo > 0.0 && hi / lo < 20.0, "d={d}: [{lo}, {hi}]");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn a2_plus_b2_is_one(two_ell in 1i64..2_000_000, frac in 0.0f64..1.0) {
                let max_m = two_ell - 1;
                let mut two_m = (frac * max_m as f64) as i64;
                if (two_ell - two_m) % 2 == 0 { two_m -= 1; }
                prop_assume!(two_m >= 0);
                let p = IndexPair::from_twice(two_ell, two_m).unwrap();
                let t = p.transition().unwrap();
                prop_assert!((t.a * t.a + t.b * t.b - 1.0).abs() <= 2.0 * f64::EPSILON);
                prop_assert!(p.satisfies_a2_lower_bound());
                prop_assert!(t.a * t.a >= 1.0 / (2.0 * p.ell.value()) * (1.0 - 1e-12));
            }

            #[test]
            fn halfint_arithmetic_is_exact(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
                let (x, y) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
                prop_assert_eq!((x + y).twice(), a + b);
                prop_assert_eq!((x - y) + y, x);
                prop_assert_eq!(x.value() + y.value(), (x + y).value());
                prop_assert_eq!(x.to_string().parse::<HalfInt>().unwrap(), x);
            }
        }
    }
}
