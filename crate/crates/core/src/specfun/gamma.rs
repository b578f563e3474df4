//! Log-gamma on the positive real axis.

use crate::error::{Error, Result};

/// Taylor coefficients `c_k`, `k = 2..=30`, of `1/Gamma(z) = sum c_k z^k`.
const RGAMMA_TAYLOR: [f64; 29] = [
    0.577_215_664_901_532_860_6,
    -0.655_878_071_520_253_881_1,
    -0.042_002_635_034_095_235_53,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_75,
    -0.009_621_971_527_876_973_562,
    0.007_218_943_246_663_099_542,
    -0.001_165_167_591_859_065_112,
    -0.000_215_241_674_114_950_972_8,
    0.000_128_050_282_388_116_186_2,
    -0.000_020_134_854_780_788_238_66,
    -0.000_001_250_493_482_142_670_657,
    0.000_001_133_027_231_981_695_882,
    -2.056_338_416_977_607_103e-7,
    6.116_095_104_481_415_818e-9,
    5.002_007_644_469_222_930e-9,
    -1.181_274_570_487_020_145e-9,
    1.043_426_711_691_100_510e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783e-14,
    -5.348_122_539_423_017_982e-15,
    1.226_778_628_238_260_790e-15,
    -1.181_259_301_697_458_770e-16,
    1.186_692_254_751_600_333e-18,
    1.412_380_655_318_031_782e-18,
    -2.298_745_684_435_370_207e-19,
    1.714_406_321_927_337_433e-20,
];

/// `B_{2k} / (2k (2k-1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_741_78;

/// `1/Gamma(1+z) - 1` for `|z| <= 1/2`, without cancellation near `z = 0`.
fn rgamma1p_minus_one(z: f64) -> f64 {
    let mut acc = 0.0;
    for &c in RGAMMA_TAYLOR.iter().rev() {
        acc = acc * z + c;
    }
    acc * z
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series * inv
}

/// Unchecked log-gamma for `x > 0`; callers guarantee the domain.
pub(crate) fn lgamma(x: f64) -> f64 {
    debug_assert!(x > 0.0 || x.is_nan());
    if x == 1.0 || x == 2.0 {
        0.0
    } else if x < 0.5 {
        lgamma(x + 1.0) - x.ln()
    } else if x < 1.5 {
        -rgamma1p_minus_one(x - 1.0).ln_1p()
    } else if x < 2.5 {
        let z = x - 2.0;
        z.ln_1p() - rgamma1p_minus_one(z).ln_1p()
    } else if x < 10.0 {
        let n = (x - 1.5).floor();
        let base = x - n;
        let mut prod = 1.0;
        let mut t = base;
        while t < x - 0.25 {
            prod *= t;
            t += 1.0;
        }
        lgamma(base) + prod.ln()
    } else {
        stirling(x)
    }
}

/// `ln Gamma(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(lgamma(x))
}
