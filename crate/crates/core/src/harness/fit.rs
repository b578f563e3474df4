//! Empirical fit of the decay constant `c` in
//! `|Y| <= C |x|^{-1/2} (1-x^2)^{max(c eps ell, m0)/2}` on `|x| >= K a`,
//! `m >= max(eps ell, m0)`, with `m0 = (d-2)/2`.
//!
//! For a candidate `c` the constant is re-estimated twice: over every sampled
//! pair (`C_full`) and over the pairs with `ell <= ell_max/2` (`C_half`). The
//! bound is said to hold when `C_full <= (1 + growth) C_half`, i.e. the
//! constant does not drift as the index range doubles. The returned `c` is
//! the largest one found such that the bound holds at every coarser candidate
//! below it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::eval::{EvalPoint, YColumn};
use crate::harness::grid::chebyshev_lobatto;
use crate::index::{check_dimension, HalfInt};

/// Grid size used by [`fit_decay_constant`].
pub const DEFAULT_FIT_GRID: usize = 2001;
/// Allowed relative drift used by [`fit_decay_constant`].
pub const DEFAULT_FIT_GROWTH: f64 = 0.1;

const SCAN_STEPS: usize = 64;
const BISECTIONS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FitOutcome {
    Fitted { c: f64, constant: f64, samples: usize },
    /// No grid point with `|x| >= K a` in the full or the halved range.
    EmptyRegion,
}

impl FitOutcome {
    pub fn c(&self) -> Option<f64> {
        match self {
            FitOutcome::Fitted { c, .. } => Some(*c),
            FitOutcome::EmptyRegion => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FitRecord {
    pub d: i64,
    #[serde(flatten)]
    pub outcome: FitOutcome,
}

/// One pair's samples, reduced to the upper envelope of the lines
/// `e -> ln|Y| + ln|x|/2 - e ln(1-x^2)`.
#[derive(Clone, Debug)]
struct PairLines {
    two_ell: i64,
    ell: f64,
    samples: usize,
    lines: Vec<(f64, f64)>,
}

impl PairLines {
    fn ln_constant(&self, c: f64, eps: f64, m0: f64) -> f64 {
        let e = (c * eps * self.ell).max(m0) / 2.0;
        self.lines.iter().map(|&(slope, icpt)| icpt + e * slope).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Upper envelope of lines `(slope, intercept)` for arguments `e >= 0`.
fn upper_envelope(mut lines: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    lines.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    // Equal slopes: keep the largest intercept.
    lines.dedup_by(|next, kept| {
        if next.0 == kept.0 {
            kept.1 = kept.1.max(next.1);
            true
        } else {
            false
        }
    });
    // Lines with the smallest slopes matter only if they win at e = 0.
    let best_at_zero = lines.iter().map(|l| l.1).fold(f64::NEG_INFINITY, f64::max);
    let start = lines.iter().rposition(|l| l.1 == best_at_zero).unwrap_or(0);
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &l in &lines[start..] {
        while hull.len() >= 2 {
            let (p, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // q is useless if l overtakes p no later than q does
            if (l.1 - p.1) * (q.0 - p.0) >= (q.1 - p.1) * (l.0 - p.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(l);
    }
    hull
}

fn collect(d: i64, ell_max: HalfInt, eps: f64, k: f64, grid_size: usize) -> Result<Vec<PairLines>> {
    let nodes: Vec<f64> = chebyshev_lobatto(grid_size)?.into_iter().filter(|&x| x > 0.0 && x < 1.0).collect();
    let points: Vec<EvalPoint> = nodes.iter().map(|&x| EvalPoint::new(x)).collect::<Result<_>>()?;
    let two_ell_max = ell_max.twice();
    let columns: Vec<i64> = (0..).map(|i| d - 2 + 2 * i).take_while(|&tm| tm < two_ell_max).collect();
    let per_column: Vec<Vec<PairLines>> = columns
        .par_iter()
        .map(|&two_m| -> Result<Vec<PairLines>> {
            let m = HalfInt::from_twice(two_m);
            let j_max = ((two_ell_max - two_m - 1) / 2) as usize;
            // Hermite pairs only: m >= eps ell.
            let js: Vec<usize> = (0..=j_max)
                .filter(|&j| m.value() >= eps * (m.value() + 0.5 + j as f64))
                .collect();
            let Some(&j_top) = js.last() else { return Ok(Vec::new()) };
            let col = YColumn::new(m, j_top)?;
            let mut per_pair: Vec<Vec<(f64, f64)>> = vec![Vec::new(); js.len()];
            let a: Vec<f64> = js.iter().map(|&j| col.pair(j).transition().map(|t| t.a)).collect::<Result<_>>()?;
            let mut vals = Vec::new();
            for pt in &points {
                if !js.iter().zip(&a).any(|(_, &aj)| pt.x() >= k * aj) {
                    continue;
                }
                col.eval_into(pt, &mut vals);
                let ln_w = pt.ln_one_minus_x2();
                for (slot, (&j, &aj)) in js.iter().zip(&a).enumerate() {
                    if pt.x() < k * aj || vals[j].is_zero() {
                        continue;
                    }
                    per_pair[slot].push((-ln_w, vals[j].log_mag() + 0.5 * pt.x().ln()));
                }
            }
            Ok(js
                .iter()
                .zip(per_pair)
                .filter(|(_, lines)| !lines.is_empty())
                .map(|(&j, lines)| {
                    let p = col.pair(j);
                    PairLines { two_ell: p.two_ell(), ell: p.ell.value(), samples: lines.len(), lines: upper_envelope(lines) }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_column.into_iter().flatten().collect())
}

/// [`fit_decay_constant_on`] with a 2001-point grid and 10% allowed drift.
pub fn fit_decay_constant(d: i64, ell_max: HalfInt, epsilon: f64, k: f64) -> Result<FitOutcome> {
    fit_decay_constant_on(d, ell_max, epsilon, k, DEFAULT_FIT_GRID, DEFAULT_FIT_GROWTH)
}

pub fn fit_decay_constant_on(
    d: i64,
    ell_max: HalfInt,
    epsilon: f64,
    k: f64,
    grid_size: usize,
    growth: f64,
) -> Result<FitOutcome> {
    check_dimension(d)?;
    crate::envelopes::RegimeParams::new(epsilon, 0.5, k)?;
    let pairs = collect(d, ell_max, epsilon, k, grid_size)?;
    let half_cap = ell_max.twice() / 2;
    if pairs.is_empty() || !pairs.iter().any(|p| p.two_ell <= half_cap) {
        return Ok(FitOutcome::EmptyRegion);
    }
    let samples = pairs.iter().map(|p| p.samples).sum();
    let m0 = (d - 2) as f64 / 2.0;
    let constants = |c: f64| {
        let (mut full, mut half) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &pairs {
            let v = p.ln_constant(c, epsilon, m0);
            full = full.max(v);
            if p.two_ell <= half_cap {
                half = half.max(v);
            }
        }
        (full, half)
    };
    let limit = growth.ln_1p();
    let holds = |c: f64| {
        let (full, half) = constants(c);
        full - half <= limit
    };
    let scan = (1..=SCAN_STEPS).map(|i| i as f64 / SCAN_STEPS as f64).find(|&c| !holds(c));
    let c = match scan {
        None => 1.0,
        Some(fail) => {
            let (mut lo, mut hi) = (fail - 1.0 / SCAN_STEPS as f64, fail);
            for _ in 0..BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if holds(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        }
    };
    Ok(FitOutcome::Fitted { c, constant: constants(c).0.exp(), samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(lines: &[(f64, f64)], e: f64) -> f64 {
        lines.iter().map(|&(s, i)| i + e * s).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn envelope_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..40);
            let lines: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(-5.0..5.0))).collect();
            let hull = upper_envelope(lines.clone());
            assert!(hull.len() <= lines.len());
            for i in 0..50 {
                let e = i as f64 * 0.2;
                assert_eq!(brute(&hull, e), brute(&lines, e), "e={e}");
            }
        }
    }

    #[test]
    fn empty_region_for_large_k() {
        let out = fit_decay_constant_on(2, HalfInt::from_int(40), 0.5, 50.0, 401, 0.1).unwrap();
        assert_eq!(out, FitOutcome::EmptyRegion);
        assert_eq!(out.c(), None);
    }

    #[test]
    fn fitted_constant_is_positive_on_a_small_range() {
        let out = fit_decay_constant_on(2, HalfInt::from_int(60), 0.5, 2.0, 801, 0.1).unwrap();
        let FitOutcome::Fitted { c, constant, samples } = out else { panic!("{out:?}") };
        assert!(c > 0.0 && c <= 1.0 && constant.is_finite() && samples > 0, "{out:?}");
    }
}
