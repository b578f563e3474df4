//! Sign plus log-magnitude reals for products that leave the `f64` range.

use std::cmp::Ordering;
use std::ops::{Div, Mul, Neg};

use crate::error::{Error, Result};

/// Largest log-magnitude converted to a plain `f64` without complaint.
pub const CONVERSION_LIMIT: f64 = 700.0;

/// A real number `sign * exp(log_mag)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledReal {
    sign: i8,
    log_mag: f64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal { sign: 0, log_mag: f64::NEG_INFINITY };
    pub const ONE: ScaledReal = ScaledReal { sign: 1, log_mag: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            ScaledReal { sign: if v > 0.0 { 1 } else { -1 }, log_mag: v.abs().ln() }
        }
    }

    /// Builds `sign * exp(log_mag)`; a zero sign ignores `log_mag`.
    pub fn from_parts(sign: i8, log_mag: f64) -> Self {
        if sign == 0 || log_mag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            ScaledReal { sign: sign.signum(), log_mag }
        }
    }

    /// `exp(log_mag)`, always positive.
    pub fn from_ln(log_mag: f64) -> Self {
        Self::from_parts(1, log_mag)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        ScaledReal { sign: self.sign.abs(), ..self }
    }

    /// `self^p` for a positive base.
    pub fn powf(self, p: f64) -> Self {
        debug_assert!(self.sign >= 0);
        if self.sign == 0 {
            if p > 0.0 {
                Self::ZERO
            } else if p == 0.0 {
                Self::ONE
            } else {
                ScaledReal { sign: 1, log_mag: f64::INFINITY }
            }
        } else {
            Self::from_parts(1, self.log_mag * p)
        }
    }

    /// Sign-tracked sum, factoring out the larger magnitude.
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_mag >= other.log_mag { (self, other) } else { (other, self) };
        let ratio = (small.log_mag - big.log_mag).exp();
        let factor = if big.sign == small.sign { 1.0 + ratio } else { 1.0 - ratio };
        if factor == 0.0 {
            return Self::ZERO;
        }
        ScaledReal { sign: big.sign, log_mag: big.log_mag + factor.ln() }
    }

    /// Exact conversion when `|log_mag| < 700`.
    pub fn to_f64(self) -> Result<f64> {
        if self.sign == 0 {
            return Ok(0.0);
        }
        if self.log_mag >= CONVERSION_LIMIT {
            return Err(Error::Overflow(self.log_mag));
        }
        if self.log_mag <= -CONVERSION_LIMIT {
            return Err(Error::Underflow(self.log_mag));
        }
        Ok(self.sign as f64 * self.log_mag.exp())
    }

    /// Conversion that saturates to `0` or `+-inf` instead of failing.
    pub fn to_f64_lossy(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.sign as f64 * self.log_mag.exp()
        }
    }

    /// Compare magnitudes.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.log_mag.total_cmp(&other.log_mag),
        }
    }
}

impl Mul for ScaledReal {
    type Output = ScaledReal;
    fn mul(self, rhs: ScaledReal) -> ScaledReal {
        if self.sign == 0 || rhs.sign == 0 {
            return ScaledReal::ZERO;
        }
        ScaledReal { sign: self.sign * rhs.sign, log_mag: self.log_mag + rhs.log_mag }
    }
}

impl Div for ScaledReal {
    type Output = ScaledReal;
    fn div(self, rhs: ScaledReal) -> ScaledReal {
        if self.sign == 0 {
            return ScaledReal::ZERO;
        }
        if rhs.sign == 0 {
            return ScaledReal { sign: self.sign, log_mag: f64::INFINITY };
        }
        ScaledReal { sign: self.sign * rhs.sign, log_mag: self.log_mag - rhs.log_mag }
    }
}

impl Neg for ScaledReal {
    type Output = ScaledReal;
    fn neg(self) -> ScaledReal {
        ScaledReal { sign: -self.sign, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn conversions() {
        assert_eq!(ScaledReal::from_f64(0.0), ScaledReal::ZERO);
        assert_eq!(ScaledReal::from_f64(-2.5).to_f64().unwrap(), -2.5);
        assert!(matches!(ScaledReal::from_ln(800.0).to_f64(), Err(Error::Overflow(_))));
        assert!(matches!(ScaledReal::from_ln(-800.0).to_f64(), Err(Error::Underflow(_))));
        assert_eq!(ScaledReal::from_ln(-800.0).to_f64_lossy(), 0.0);
        assert_eq!(ScaledReal::from_parts(1, f64::NEG_INFINITY), ScaledReal::ZERO);
    }

    #[test]
    fn products_far_outside_f64() {
        let big = ScaledReal::from_ln(2000.0);
        let small = ScaledReal::from_ln(-1999.0);
        let p = -(big * small);
        assert!((p.to_f64().unwrap() + 1f64.exp()).abs() < 1e-12);
        assert!(((big / big).to_f64().unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(big.powf(0.5).log_mag(), 1000.0);
    }

    #[test]
    fn cancelling_sum() {
        let a = ScaledReal::from_ln(1500.0);
        assert!(a.add(-a).is_zero());
        let s = ScaledReal::from_f64(3.0).add(ScaledReal::from_f64(-1.0));
        assert!((s.to_f64().unwrap() - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_f64(a in -1e100f64..1e100, b in -1e100f64..1e100) {
            let (sa, sb) = (ScaledReal::from_f64(a), ScaledReal::from_f64(b));
            let prod = (sa * sb).to_f64_lossy();
            prop_assert!((prod - a * b).abs() <= 1e-13 * (a * b).abs());
            let sum = sa.add(sb).to_f64_lossy();
            let scale = a.abs().max(b.abs());
            prop_assert!((sum - (a + b)).abs() <= 1e-13 * scale);
            if b != 0.0 {
                let q = (sa / sb).to_f64_lossy();
                prop_assert!((q - a / b).abs() <= 1e-13 * (a / b).abs());
            }
        }
    }
}
