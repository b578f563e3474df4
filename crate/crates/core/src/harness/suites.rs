//! Named invariant suites, each runnable on its own.
//!
//! `Scale::Full` uses the index ranges and tolerances of the acceptance
//! criteria; `Scale::Quick` shrinks the ranges for smoke tests.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptotics::{claim_ratio, l_function, ode_residual, sign_check, titchmarsh_check_ln, zeta_solve};
use crate::envelopes::{
    bessel_envelope_ln, exp_small_y_bound_ln, hermite_envelope_ln, universal_bound_ln, DecayForm, Regime,
    RegimeParams, SecondBound,
};
use crate::error::{Error, Result};
use crate::eval::{angle_rule_for, eval_y_scaled, inner_product, normalization_rule, EvalPoint, YColumn};
use crate::harness::config::SweepConfig;
use crate::harness::fit::{fit_decay_constant_on, FitOutcome, DEFAULT_FIT_GROWTH};
use crate::harness::projection::{projection_worst, PROJECTION_XS};
use crate::harness::report::SuiteResult;
use crate::harness::sweep::run_sweep;
use crate::index::{enumerate_all, HalfInt, IndexPair};
use crate::specfun::bessel_j;
use crate::specfun::quadrature::CosThetaRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Normalization,
    Projection,
    Orthogonality,
    Parity,
    EnvelopeStability,
    BesselLemma,
    Zeta,
    Ode,
    DecayFit,
    Determinism,
    Evenness,
    Universal,
    ClaimRatio,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Normalization,
        Suite::Projection,
        Suite::Orthogonality,
        Suite::Parity,
        Suite::EnvelopeStability,
        Suite::BesselLemma,
        Suite::Zeta,
        Suite::Ode,
        Suite::DecayFit,
        Suite::Determinism,
        Suite::Evenness,
        Suite::Universal,
        Suite::ClaimRatio,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Projection => "projection",
            Suite::Orthogonality => "orthogonality",
            Suite::Parity => "parity",
            Suite::EnvelopeStability => "envelope-stability",
            Suite::BesselLemma => "bessel-lemma",
            Suite::Zeta => "zeta",
            Suite::Ode => "ode",
            Suite::DecayFit => "decay-fit",
            Suite::Determinism => "determinism",
            Suite::Evenness => "evenness",
            Suite::Universal => "universal",
            Suite::ClaimRatio => "claim-ratio",
        }
    }

    /// The acceptance criterion the suite implements, if any.
    pub fn criterion(&self) -> Option<u8> {
        let n = Suite::ALL.iter().position(|s| s == self)? + 1;
        (n <= 10).then_some(n as u8)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Full,
    Quick,
}

impl Scale {
    fn pick<T>(self, full: T, quick: T) -> T {
        match self {
            Scale::Full => full,
            Scale::Quick => quick,
        }
    }
}

/// Runs one suite on a pool of `parallelism` threads.
pub fn run_suite(suite: Suite, scale: Scale, parallelism: usize) -> Result<SuiteResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| match suite {
        Suite::Normalization => normalization(scale.pick(60, 12)),
        Suite::Projection => projection(scale.pick(30, 8)),
        Suite::Orthogonality => orthogonality(scale.pick(40, 10)),
        Suite::Parity => parity(scale.pick(10_000, 500)),
        Suite::EnvelopeStability => envelope_stability(scale.pick(200, 20), scale.pick(2001, 201)),
        Suite::BesselLemma => bessel_lemma(scale.pick(200.0, 30.0), scale.pick(500.0, 60.0)),
        Suite::Zeta => zeta(scale.pick(80, 12), scale.pick(200, 40)),
        Suite::Ode => ode(scale.pick(100, 14)),
        Suite::DecayFit => decay_fit(scale.pick(200, 40), scale.pick(2001, 401)),
        Suite::Determinism => determinism(scale.pick(30, 8), scale.pick(201, 41), parallelism),
        Suite::Evenness => evenness(scale.pick(30, 8)),
        Suite::Universal => universal(scale.pick(60, 12), scale.pick(401, 61)),
        Suite::ClaimRatio => claim_ratios(scale.pick(40, 12)),
    })
}

fn int_half(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

/// `int Y^2 dx = 1` for every pair with `ell <= ell_max`, each with its own
/// `2 ceil(ell) + 16`-node rule.
fn normalization(ell_max: i64) -> Result<SuiteResult> {
    let rules: Vec<CosThetaRule> =
        (0..=ell_max).map(|c| normalization_rule(int_half(c))).collect::<Result<_>>()?;
    let pairs = enumerate_all(int_half(ell_max));
    let errs: Vec<f64> = pairs
        .par_iter()
        .map(|&p| Ok((inner_product(p, p, &rules[p.ell.ceil() as usize])? - 1.0).abs()))
        .collect::<Result<_>>()?;
    let worst = errs.iter().copied().fold(0.0, f64::max);
    Ok(SuiteResult::at_most(
        Suite::Normalization.name(),
        worst,
        1e-8,
        format!("{} pairs with ell <= {ell_max}, worst |norm - 1| = {worst:.3e}", pairs.len()),
    ))
}

fn projection(base: i64) -> Result<SuiteResult> {
    let per_d: Vec<(f64, f64)> = (2..=5i64)
        .into_par_iter()
        .map(|d| projection_worst(d, HalfInt::from_twice(2 * base + d - 1), &PROJECTION_XS))
        .collect::<Result<_>>()?;
    let err = per_d.iter().map(|r| r.0).fold(0.0, f64::max);
    let spread = per_d.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(SuiteResult::at_most(
        Suite::Projection.name(),
        err.max(spread),
        1e-8,
        format!("d = 2..5, ell <= {base} + (d-1)/2, 7 x-values: relative error {err:.3e}, spread {spread:.3e}"),
    ))
}

/// Off-diagonal Gram entries of each `m`-column on one shared exact rule.
fn orthogonality(ell_max: i64) -> Result<SuiteResult> {
    let rule = normalization_rule(int_half(ell_max))?;
    let points: Vec<EvalPoint> = (0..rule.len()).map(|k| EvalPoint::from_angle(rule.angle(k))).collect::<Result<_>>()?;
    let two_ms: Vec<i64> = (0..2 * ell_max - 2).collect();
    let per_m: Vec<(f64, usize)> = two_ms
        .par_iter()
        .map(|&two_m| -> Result<(f64, usize)> {
            let m = HalfInt::from_twice(two_m);
            let j_max = ((2 * ell_max - two_m - 1) / 2) as usize;
            let col = YColumn::new(m, j_max)?;
            let w = rule.weights(angle_rule_for(m));
            let mut gram = vec![0.0; (j_max + 1) * (j_max + 1)];
            let mut v = Vec::new();
            for (pt, &wk) in points.iter().zip(w) {
                if wk == 0.0 {
                    continue;
                }
                col.eval_f64_into(pt, &mut v);
                for i in 0..=j_max {
                    for j in 0..i {
                        gram[i * (j_max + 1) + j] += wk * v[i] * v[j];
                    }
                }
            }
            let worst = gram.iter().map(|g| g.abs()).fold(0.0, f64::max);
            Ok((worst, j_max * (j_max + 1) / 2))
        })
        .collect::<Result<_>>()?;
    let worst = per_m.iter().map(|r| r.0).fold(0.0, f64::max);
    let count: usize = per_m.iter().map(|r| r.1).sum();
    Ok(SuiteResult::at_most(
        Suite::Orthogonality.name(),
        worst,
        1e-8,
        format!("{count} pairs of distinct ell <= {ell_max}, worst |<Y, Y'>| = {worst:.3e}"),
    ))
}

/// Relative parity defect on random `(pair, x)` samples, `ell <= 100`.
fn parity(samples: usize) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let draws: Vec<(IndexPair, f64)> = (0..samples)
        .map(|_| {
            let two_ell = rng.gen_range(1..=200i64);
            let count = (two_ell + 1) / 2;
            let two_m = (two_ell - 1) % 2 + 2 * rng.gen_range(0..count);
            (IndexPair::raw(HalfInt::from_twice(two_ell), HalfInt::from_twice(two_m)), rng.gen_range(-1.0..1.0))
        })
        .collect();
    let defects: Vec<f64> = draws
        .par_iter()
        .map(|&(p, x)| {
            let a = eval_y_scaled(p, &EvalPoint::new(x)?)?;
            let b = eval_y_scaled(p, &EvalPoint::new(-x)?)?;
            let odd = (p.two_ell() - p.two_m() - 1) / 2 % 2 == 1;
            let b = if odd { -b } else { b };
            Ok(match (a.is_zero(), b.is_zero()) {
                (true, true) => 0.0,
                (false, false) if a.sign() == b.sign() => (a.log_mag() - b.log_mag()).exp_m1().abs(),
                _ => f64::INFINITY,
            })
        })
        .collect::<Result<_>>()?;
    let worst = defects.iter().copied().fold(0.0, f64::max);
    Ok(SuiteResult::at_most(
        Suite::Parity.name(),
        worst,
        1e-12,
        format!("{samples} random samples with ell <= 100, worst relative defect {worst:.3e}"),
    ))
}

fn stability_config(ell_max: i64, grid: usize) -> SweepConfig {
    SweepConfig {
        d_list: vec![2],
        ell_max: int_half(ell_max),
        x_grid_size: grid,
        epsilon: 0.5,
        fit_c: false,
        ..SweepConfig::default()
    }
}

/// `R_H` and `R_B` at `L` and `2L`; both must be finite, below 100, and grow
/// by at most 10% when the range doubles.
fn envelope_stability(base: i64, grid: usize) -> Result<SuiteResult> {
    let lo = run_sweep(&stability_config(base, grid))?;
    let hi = run_sweep(&stability_config(2 * base, grid))?;
    let get = |v: Option<f64>| v.unwrap_or(f64::NAN);
    let (rh1, rh2) = (get(lo.global.c_h_core), get(hi.global.c_h_core));
    let (rb1, rb2) = (get(lo.global.c_b), get(hi.global.c_b));
    let growth = (rh2 / rh1).max(rb2 / rb1);
    let mut r = SuiteResult::at_most(
        Suite::EnvelopeStability.name(),
        growth,
        1.1,
        format!(
            "grid {grid}: R_H({base}) = {rh1:.6}, R_H({}) = {rh2:.6}, R_B({base}) = {rb1:.6}, R_B({}) = {rb2:.6}",
            2 * base,
            2 * base
        ),
    );
    r.passed &= [rh1, rh2, rb1, rb2].iter().all(|v| v.is_finite() && *v < 100.0);
    Ok(r)
}

/// `sup nu^{1/3} |J_nu(z)|` over `nu` in `[1, nu_max]` (step 1/2) and `z`
/// in `[0, z_max]` (step 0.05).
fn bessel_lemma(nu_max: f64, z_max: f64) -> Result<SuiteResult> {
    let nus: Vec<f64> = (0..).map(|i| 1.0 + 0.5 * i as f64).take_while(|&v| v <= nu_max).collect();
    let nz = (z_max / 0.05).round() as usize;
    let per_nu: Vec<(f64, f64, f64)> = nus
        .par_iter()
        .map(|&nu| {
            let mut best = (0.0, nu, 0.0);
            for i in 0..=nz {
                let z = i as f64 * 0.05;
                let v = nu.cbrt() * bessel_j(nu, z)?.abs();
                if v > best.0 {
                    best = (v, nu, z);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let (worst, nu, z) = per_nu.iter().copied().fold((0.0, 0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    Ok(SuiteResult::at_most(
        Suite::BesselLemma.name(),
        worst,
        0.7,
        format!("nu in [1, {nu_max}], z in [0, {z_max}]: sup nu^(1/3)|J_nu(z)| = {worst:.6} at nu = {nu}, z = {z:.2}"),
    ))
}

/// The `zeta` map on every pair with `0 < m <= ell/2`, `ell <= ell_max`.
fn zeta(ell_max: i64, grid: usize) -> Result<SuiteResult> {
    let pairs: Vec<IndexPair> = enumerate_all(int_half(ell_max))
        .into_iter()
        .filter(|p| p.m.twice() > 0 && 2 * p.m.twice() <= p.ell.twice())
        .collect();
    #[derive(Default, Clone, Copy)]
    struct Tally {
        residual: f64,
        boundary: f64,
        non_monotone: usize,
        above_y: usize,
    }
    let tallies: Vec<Tally> = pairs
        .par_iter()
        .map(|&p| -> Result<Tally> {
            let tr = p.transition()?;
            let mut xs: Vec<f64> = (0..grid).map(|i| i as f64 / grid as f64).collect();
            xs.push(tr.a);
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            let mut t = Tally::default();
            let mut prev = f64::INFINITY;
            for &x in &xs {
                let s = zeta_solve(p, x, 0.5)?;
                t.residual = t.residual.max(s.residual);
                if !(s.zeta < prev) {
                    t.non_monotone += 1;
                }
                prev = s.zeta;
                if x == tr.a {
                    t.boundary = t.boundary.max((s.zeta - tr.b * tr.b).abs());
                }
                if x >= tr.a {
                    let y2 = (1.0 - x) * (1.0 + x);
                    if s.zeta > y2 + 1e-12 {
                        t.above_y += 1;
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut all = Tally::default();
    for t in &tallies {
        all.residual = all.residual.max(t.residual);
        all.boundary = all.boundary.max(t.boundary);
        all.non_monotone += t.non_monotone;
        all.above_y += t.above_y;
    }
    let mut r = SuiteResult::at_most(
        Suite::Zeta.name(),
        all.residual.max(all.boundary),
        1e-10,
        format!(
            "{} pairs, {grid}-point grid: worst residual {:.3e}, |zeta(a) - b^2| {:.3e}, {} non-monotone steps, {} points with zeta > y^2",
            pairs.len(),
            all.residual,
            all.boundary,
            all.non_monotone,
            all.above_y
        ),
    );
    r.passed &= all.non_monotone == 0 && all.above_y == 0;
    Ok(r)
}

/// Points strictly inside `(lo, hi)`: `lo + (hi - lo) i / (n + 1)`, `i = 1..=n`.
fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
}

/// Difference step for the ODE residual: `1e-4`, shrinking linearly once
/// `|x| > 0.99`, since the local wavelength scales like `1 - x^2`.
fn ode_step(x: f64) -> f64 {
    (1e-4 * (100.0 * (1.0 - x.abs())).min(1.0)).max(1e-6)
}
const SIGN_POINTS: usize = 50;
const TITCHMARSH_POINTS: usize = 8;

/// Residual of `L'' = Q L`, the sign claim, the decay inequality and the
/// shrinking of `|L(1 - 10^-k)|` beyond `x-bar`, for every pair with `m > 1`, `ell <= ell_max`.
fn ode(ell_max: i64) -> Result<SuiteResult> {
    let pairs: Vec<IndexPair> = enumerate_all(int_half(ell_max)).into_iter().filter(|p| p.m.twice() > 2).collect();
    let xs: Vec<f64> = (0..=40).map(|i| -0.999 + 1.998 * i as f64 / 40.0).collect();
    #[derive(Default, Clone, Copy)]
    struct Tally {
        residual: f64,
        sign_checked: usize,
        sign_skipped: usize,
        sign_failed: usize,
        titchmarsh_checked: usize,
        titchmarsh_failed: usize,
        not_shrinking: usize,
    }
    let slack = 1e-6f64.ln_1p();
    let tallies: Vec<Tally> = pairs
        .par_iter()
        .map(|&p| -> Result<Tally> {
            let mut t = Tally::default();
            for &x in &xs {
                t.residual = t.residual.max(ode_residual(p, x, ode_step(x))?);
            }
            let xbar = p.transition()?.xbar.expect("m > 1");
            let mut prev = f64::INFINITY;
            for k in 2..=6 {
                let x = 1.0 - 10f64.powi(-k);
                if x <= xbar {
                    continue;
                }
                let l = l_function(p, x)?.abs();
                if !(l < prev) {
                    t.not_shrinking += 1;
                }
                prev = l;
            }
            if 2 * p.m.twice() >= p.ell.twice() {
                for x in interior(xbar, 1.0 - 1e-4, SIGN_POINTS) {
                    match sign_check(p, x)? {
                        Some(true) => t.sign_checked += 1,
                        Some(false) => t.sign_failed += 1,
                        None => t.sign_skipped += 1,
                    }
                }
                let grid = interior(xbar, 1.0 - 1e-4, TITCHMARSH_POINTS);
                for (i, &xs_) in grid.iter().enumerate() {
                    for &x in &grid[i + 1..] {
                        let (lhs, rhs) = titchmarsh_check_ln(p, xs_, x)?;
                        t.titchmarsh_checked += 1;
                        if lhs > rhs + slack {
                            t.titchmarsh_failed += 1;
                        }
                    }
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut all = Tally::default();
    for t in &tallies {
        all.residual = all.residual.max(t.residual);
        all.sign_checked += t.sign_checked;
        all.sign_skipped += t.sign_skipped;
        all.sign_failed += t.sign_failed;
        all.titchmarsh_checked += t.titchmarsh_checked;
        all.titchmarsh_failed += t.titchmarsh_failed;
        all.not_shrinking += t.not_shrinking;
    }
    let mut r = SuiteResult::at_most(
        Suite::Ode.name(),
        all.residual,
        1e-3,
        format!(
            "{} pairs: worst residual {:.3e}; sign claim {} held, {} failed, {} skipped; \
             decay inequality {} checked, {} failed; {} pairs with |L| not shrinking beyond x-bar",
            pairs.len(),
            all.residual,
            all.sign_checked,
            all.sign_failed,
            all.sign_skipped,
            all.titchmarsh_checked,
            all.titchmarsh_failed,
            all.not_shrinking
        ),
    );
    r.passed &= all.sign_failed == 0 && all.titchmarsh_failed == 0 && all.not_shrinking == 0;
    Ok(r)
}

fn decay_fit(ell_max: i64, grid: usize) -> Result<SuiteResult> {
    let out = fit_decay_constant_on(2, int_half(ell_max), 0.5, 2.0, grid, DEFAULT_FIT_GROWTH)?;
    let (c, summary) = match out {
        FitOutcome::Fitted { c, constant, samples } => {
            (c, format!("d = 2, eps = 1/2, K = 2, ell <= {ell_max}: c = {c:.6}, C = {constant:.6}, {samples} samples"))
        }
        FitOutcome::EmptyRegion => (0.0, "empty region".to_string()),
    };
    Ok(SuiteResult { name: Suite::DecayFit.name().into(), passed: c > 0.0, measured: c, threshold: 0.0, summary })
}

fn determinism(ell_max: i64, grid: usize, parallelism: usize) -> Result<SuiteResult> {
    let cfg = SweepConfig {
        d_list: vec![2, 3],
        ell_max: int_half(ell_max),
        x_grid_size: grid,
        ..SweepConfig::default()
    };
    let wide = parallelism.max(4);
    let a = run_sweep(&SweepConfig { parallelism: 1, ..cfg.clone() })?.to_json_timeless()?;
    let b = run_sweep(&SweepConfig { parallelism: wide, ..cfg })?.to_json_timeless()?;
    let same = a == b;
    Ok(SuiteResult {
        name: Suite::Determinism.name().into(),
        passed: same,
        measured: if same { 0.0 } else { 1.0 },
        threshold: 0.0,
        summary: format!(
            "sweep JSON with 1 vs {wide} threads: {} ({} bytes)",
            if same { "identical" } else { "different" },
            a.len()
        ),
    })
}

/// Envelope functions against their mirror images.
fn evenness(ell_max: i64) -> Result<SuiteResult> {
    let rp = RegimeParams::default();
    let xs: Vec<f64> = (1..=40).map(|i| i as f64 / 40.0).collect();
    let mut worst = 0.0f64;
    let rel = |a: f64, b: f64| if a == b { 0.0 } else { (a - b).abs() / a.abs().max(b.abs()) };
    for p in enumerate_all(int_half(ell_max)) {
        let d = if p.m.is_integer() { 2 } else { 3 };
        for &x in &xs {
            let (pt, mirror) = (EvalPoint::new(x)?, EvalPoint::new(-x)?);
            let f = |pt: &EvalPoint| -> Result<[f64; 3]> {
                let env = match Regime::of(p, rp.epsilon) {
                    Regime::Hermite => hermite_envelope_ln(d, p, pt, &rp, DecayForm::Corollary)?,
                    Regime::Bessel => bessel_envelope_ln(d, p, pt, &rp)?,
                };
                Ok([env, exp_small_y_bound_ln(p, pt)?, universal_bound_ln(p, pt, SecondBound::Sharp)?])
            };
            for (u, v) in f(&pt)?.into_iter().zip(f(&mirror)?) {
                worst = worst.max(rel(u.exp(), v.exp()));
            }
        }
    }
    Ok(SuiteResult::at_most(
        Suite::Evenness.name(),
        worst,
        1e-14,
        format!("pairs with ell <= {ell_max}: worst relative asymmetry {worst:.3e}"),
    ))
}

/// `|Y| <= universal_bound` with unit constant on every pair of `I`.
fn universal(ell_max: i64, grid: usize) -> Result<SuiteResult> {
    let cfg = SweepConfig {
        d_list: vec![2, 3],
        ell_max: int_half(ell_max),
        x_grid_size: grid,
        fit_c: false,
        ..SweepConfig::default()
    };
    let c = run_sweep(&cfg)?.global.c_univ.unwrap_or(0.0);
    Ok(SuiteResult::at_most(
        Suite::Universal.name(),
        c,
        1.0 + 1e-9,
        format!("ell <= {ell_max}, grid {grid}: sup |Y| / universal bound = {c:.12}"),
    ))
}

/// The claim ratio stays positive and finite on the band; reports `C_eps`.
fn claim_ratios(ell_max: i64) -> Result<SuiteResult> {
    let eps = 0.5;
    let pairs: Vec<IndexPair> = enumerate_all(int_half(ell_max))
        .into_iter()
        .filter(|p| p.m.twice() > 0 && p.m.value() <= eps * p.ell.value())
        .collect();
    let per: Vec<(f64, f64, usize)> = pairs
        .par_iter()
        .map(|&p| -> Result<(f64, f64, usize)> {
            let b = p.transition()?.b;
            let (mut lo, mut hi, mut bad) = (f64::INFINITY, 0.0f64, 0);
            for i in 0..=20 {
                let y = (0.5 * b + (b / eps.sqrt() - 0.5 * b) * i as f64 / 20.0).min(1.0);
                let x = ((1.0 - y) * (1.0 + y)).sqrt();
                match claim_ratio(p, x, eps) {
                    Ok(r) if r > 0.0 && r.is_finite() => {
                        lo = lo.min(r);
                        hi = hi.max(r);
                    }
                    Ok(_) => bad += 1,
                    Err(Error::Singular(_)) | Err(Error::Domain(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok((lo, hi, bad))
        })
        .collect::<Result<_>>()?;
    let lo = per.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let hi = per.iter().map(|r| r.1).fold(0.0, f64::max);
    let bad: usize = per.iter().map(|r| r.2).sum();
    let c_eps = hi.max(1.0 / lo);
    Ok(SuiteResult {
        name: Suite::ClaimRatio.name().into(),
        passed: bad == 0 && c_eps.is_finite(),
        measured: c_eps,
        threshold: f64::INFINITY,
        summary: format!(
            "{} pairs, eps = 1/2: ratio in [{lo:.4}, {hi:.4}], C_eps = {c_eps:.4}, {bad} non-positive",
            pairs.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::Determinism.criterion(), Some(10));
        assert_eq!(Suite::Evenness.criterion(), None);
    }

    #[test]
    fn quick_suites_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, Scale::Quick, 1).unwrap();
            assert!(r.passed, "{}: {}", r.name, r.summary);
        }
    }
}
