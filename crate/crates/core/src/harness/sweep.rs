//! The envelope sweep: every pair of `I_d` up to `ell_max`, for every `d`,
//! on a Chebyshev grid plus each pair's special points.
//!
//! Work is split by `m`-column (one shared recurrence gives every `ell` of a
//! column). Columns run on a rayon pool; results are collected in input order
//! and reduced sequentially, so the report does not depend on the pool size.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::envelopes::{
    bessel_envelope_ln, exp_small_y_bound_ln, hermite_envelope_ln, ln_first_universal_const, ln_hermite_core,
    universal_ln_with_const, DecayForm, Regime, RegimeParams, SecondBound,
};
use crate::error::{Error, Result};
use crate::eval::{eval_x_scaled, eval_y_scaled, EvalPoint, YColumn};
use crate::harness::config::SweepConfig;
use crate::harness::fit::{fit_decay_constant_on, FitRecord};
use crate::harness::grid::{chebyshev_lobatto, pair_grid};
use crate::harness::projection::{projection_worst, PROJECTION_XS};
use crate::harness::report::{
    csv_writer, write_csv_header, GlobalRecord, PairRecord, SuiteResult, SweepReport, SweepRow,
};
use crate::index::{HalfInt, IndexPair};
use crate::scaled::ScaledReal;

/// Log-domain running maxima behind [`GlobalRecord`].
#[derive(Clone, Copy, Debug)]
struct Maxima {
    h: f64,
    h_core: f64,
    h_theorem: f64,
    b: f64,
    exp: f64,
    univ: f64,
}

impl Default for Maxima {
    fn default() -> Self {
        let n = f64::NEG_INFINITY;
        Maxima { h: n, h_core: n, h_theorem: n, b: n, exp: n, univ: n }
    }
}

fn bump(slot: &mut f64, v: f64) {
    if v > *slot {
        *slot = v;
    }
}

impl Maxima {
    fn merge(&mut self, o: &Maxima) {
        bump(&mut self.h, o.h);
        bump(&mut self.h_core, o.h_core);
        bump(&mut self.h_theorem, o.h_theorem);
        bump(&mut self.b, o.b);
        bump(&mut self.exp, o.exp);
        bump(&mut self.univ, o.univ);
    }
}

fn finish(ln: f64) -> Option<f64> {
    (ln > f64::NEG_INFINITY).then(|| ln.exp())
}

struct PairOutcome {
    record: PairRecord,
    maxima: Maxima,
}

struct ColumnOutcome {
    pairs: Vec<PairOutcome>,
    csv: Vec<u8>,
}

struct Shared<'a> {
    rp: RegimeParams,
    two_ell_max: i64,
    nodes: &'a [f64],
    points: &'a [EvalPoint],
    want_rows: bool,
}

fn x_tilde_from_y(d: i64, p: IndexPair, pt: &EvalPoint, y: ScaledReal) -> Result<ScaledReal> {
    if d == 2 {
        Ok(y)
    } else if pt.y() > 0.0 {
        let shift = (d - 2) as f64 / 4.0 * pt.ln_one_minus_x2();
        Ok(ScaledReal::from_parts(y.sign(), y.log_mag() - shift))
    } else {
        eval_x_scaled(d, p, pt)
    }
}

fn process_pair(
    d: i64,
    p: IndexPair,
    sh: &Shared,
    node_value: impl Fn(usize) -> ScaledReal,
    csv: &mut csv::Writer<Vec<u8>>,
) -> Result<PairOutcome> {
    let rp = &sh.rp;
    let regime = Regime::of(p, rp.epsilon);
    let first_const = ln_first_universal_const(p);
    let mut mx = Maxima::default();
    let (mut best, mut best_x) = (-1.0f64, f64::NAN);
    for gp in pair_grid(sh.nodes, p) {
        let owned;
        let (pt, y) = match gp.node {
            Some(i) => (&sh.points[i], node_value(i)),
            None => {
                owned = EvalPoint::new(gp.x)?;
                (&owned, eval_y_scaled(p, &owned)?)
            }
        };
        let xt = x_tilde_from_y(d, p, pt, y)?;
        let env_ln = match regime {
            Regime::Hermite => hermite_envelope_ln(d, p, pt, rp, DecayForm::Corollary)?,
            Regime::Bessel => bessel_envelope_ln(d, p, pt, rp)?,
        };
        let ln_ratio = if xt.is_zero() { f64::NEG_INFINITY } else { xt.log_mag() - env_ln };
        if !xt.is_zero() {
            match regime {
                Regime::Hermite => {
                    bump(&mut mx.h, ln_ratio);
                    bump(&mut mx.h_core, xt.log_mag() - ln_hermite_core(p, pt));
                    bump(&mut mx.h_theorem, xt.log_mag() - hermite_envelope_ln(d, p, pt, rp, DecayForm::Theorem)?);
                }
                Regime::Bessel => bump(&mut mx.b, ln_ratio),
            }
        }
        if !y.is_zero() {
            if regime == Regime::Bessel {
                bump(&mut mx.exp, y.log_mag() - exp_small_y_bound_ln(p, pt)?);
            }
            bump(&mut mx.univ, y.log_mag() - universal_ln_with_const(p, pt, SecondBound::Sharp, first_const));
        }
        let ratio = ln_ratio.exp();
        if ratio > best {
            best = ratio;
            best_x = gp.x;
        }
        if sh.want_rows {
            let row = SweepRow {
                two_ell: p.two_ell(),
                two_m: p.two_m(),
                d,
                x: gp.x,
                y: y.to_f64_lossy(),
                x_tilde: xt.to_f64_lossy(),
                envelope: env_ln.exp(),
                ratio,
                regime: regime.as_str().to_string(),
            };
            row.write_to(csv)?;
        }
    }
    let record = PairRecord {
        two_ell: p.two_ell(),
        two_m: p.two_m(),
        d,
        regime: regime.as_str().to_string(),
        sup_ratio: best,
        argmax_x: best_x,
    };
    Ok(PairOutcome { record, maxima: mx })
}

fn process_column(d: i64, two_m: i64, sh: &Shared) -> Result<ColumnOutcome> {
    let m = HalfInt::from_twice(two_m);
    let j_max = ((sh.two_ell_max - two_m - 1) / 2) as usize;
    let col = YColumn::new(m, j_max)?;
    let values: Vec<Vec<ScaledReal>> = sh
        .points
        .iter()
        .map(|pt| {
            let mut v = Vec::with_capacity(j_max + 1);
            col.eval_into(pt, &mut v);
            v
        })
        .collect();
    let mut csv = csv_writer(Vec::new());
    let pairs = (0..=j_max)
        .map(|j| process_pair(d, col.pair(j), sh, |i| values[i][j], &mut csv))
        .collect::<Result<_>>()?;
    let csv = csv.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(ColumnOutcome { pairs, csv })
}

/// Runs a sweep without writing rows.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    run_sweep_to(cfg, None::<&mut std::io::Sink>)
}

/// Runs a sweep, streaming CSV rows (header first) into `csv` when given.
///
/// Rows are ordered by `d`, then `m`, then `ell`, then `x`; `per_pair` is
/// ordered by `d`, then `ell`, then `m`.
pub fn run_sweep_to<W: Write>(cfg: &SweepConfig, mut csv: Option<&mut W>) -> Result<SweepReport> {
    let start = Instant::now();
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut ds = cfg.d_list.clone();
    ds.sort_unstable();
    ds.dedup();
    let nodes = chebyshev_lobatto(cfg.x_grid_size)?;
    let points: Vec<EvalPoint> = nodes.iter().map(|&x| EvalPoint::new(x)).collect::<Result<_>>()?;
    let sh = Shared {
        rp: cfg.regime_params()?,
        two_ell_max: cfg.ell_max.twice(),
        nodes: &nodes,
        points: &points,
        want_rows: csv.is_some(),
    };
    let columns: Vec<(i64, i64)> = ds
        .iter()
        .flat_map(|&d| (0..).map(move |i| (d, d - 2 + 2 * i)).take_while(|&(_, tm)| tm < sh.two_ell_max))
        .collect();

    if let Some(w) = csv.as_deref_mut() {
        let mut header = csv_writer(Vec::new());
        write_csv_header(&mut header)?;
        w.write_all(&header.into_inner().map_err(|e| Error::Io(e.to_string()))?)?;
    }
    let mut outcomes = Vec::new();
    for chunk in columns.chunks(4 * cfg.parallelism) {
        let done: Vec<ColumnOutcome> =
            pool.install(|| chunk.par_iter().map(|&(d, tm)| process_column(d, tm, &sh)).collect::<Result<_>>())?;
        for col in done {
            if let Some(w) = csv.as_deref_mut() {
                w.write_all(&col.csv)?;
            }
            outcomes.extend(col.pairs);
        }
    }
    if let Some(w) = csv {
        w.flush()?;
    }
    outcomes.sort_by_key(|o| (o.record.d, o.record.two_ell, o.record.two_m));

    let mut mx = Maxima::default();
    for o in &outcomes {
        mx.merge(&o.maxima);
    }
    let mut fitted_c = Vec::new();
    if cfg.fit_c {
        for &d in &ds {
            let outcome = pool.install(|| {
                fit_decay_constant_on(d, cfg.ell_max, cfg.epsilon, cfg.k, cfg.x_grid_size, cfg.tolerance("fit_growth"))
            })?;
            fitted_c.push(FitRecord { d, outcome });
        }
    }
    let global = GlobalRecord {
        grid_size: cfg.x_grid_size,
        c_h: finish(mx.h),
        c_h_core: finish(mx.h_core),
        c_h_theorem: finish(mx.h_theorem),
        c_b: finish(mx.b),
        c_exp: finish(mx.exp),
        c_univ: finish(mx.univ),
        fitted_c,
    };
    let per_pair: Vec<PairRecord> = outcomes.into_iter().map(|o| o.record).collect();
    let suites = sweep_suites(cfg, &ds, &per_pair, &global, &pool)?;
    Ok(SweepReport {
        config: cfg.clone(),
        per_pair,
        global,
        suites,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn sweep_suites(
    cfg: &SweepConfig,
    ds: &[i64],
    per_pair: &[PairRecord],
    global: &GlobalRecord,
    pool: &rayon::ThreadPool,
) -> Result<Vec<SuiteResult>> {
    let worst = per_pair.iter().map(|p| p.sup_ratio).fold(0.0, f64::max);
    let bad = per_pair.iter().filter(|p| !p.sup_ratio.is_finite()).count();
    let mut ratios = SuiteResult::at_most(
        "ratios",
        worst,
        cfg.tolerance("ratio_max"),
        format!("{} pairs, largest sup-ratio {worst:.6e}, {bad} non-finite", per_pair.len()),
    );
    ratios.passed &= bad == 0;

    let univ = global.c_univ.unwrap_or(0.0);
    let universal = SuiteResult::at_most(
        "universal",
        univ,
        1.0 + cfg.tolerance("universal_slack"),
        format!("largest |Y| / universal bound {univ:.12}"),
    );

    let per_d: Vec<(f64, f64)> = pool.install(|| {
        ds.par_iter().map(|&d| projection_worst(d, cfg.ell_max, &PROJECTION_XS)).collect::<Result<_>>()
    })?;
    let err = per_d.iter().map(|r| r.0).fold(0.0, f64::max);
    let spread = per_d.iter().map(|r| r.1).fold(0.0, f64::max);
    let projection = SuiteResult::at_most(
        "projection",
        err.max(spread),
        cfg.tolerance("projection"),
        format!("relative error {err:.3e}, spread over x {spread:.3e}"),
    );
    Ok(vec![ratios, universal, projection])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::{read_csv, reduce_rows};

    fn small(ell_max: &str, grid: usize) -> SweepConfig {
        SweepConfig {
            d_list: vec![2, 3],
            ell_max: ell_max.parse().unwrap(),
            x_grid_size: grid,
            fit_c: false,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn empty_range_passes_vacuously() {
        let cfg = small("0", 5);
        let rep = run_sweep(&cfg).unwrap();
        assert!(rep.per_pair.is_empty());
        assert!(rep.passed());
        assert_eq!(rep.global.c_h, None);
    }

    #[test]
    fn single_pair_by_hand() {
        let cfg = SweepConfig { d_list: vec![2], ..small("1/2", 3) };
        let rep = run_sweep(&cfg).unwrap();
        assert_eq!(rep.per_pair.len(), 1);
        let r = &rep.per_pair[0];
        assert_eq!((r.two_ell, r.two_m, r.regime.as_str()), (1, 0, "bessel"));
        // Y = 1/sqrt 2; at x = 0 the envelope is (4 + 1)^{-1/4}, at x = +-1 it is 4^{-1/4}.
        let want = 5f64.powf(0.25) / 2f64.sqrt();
        assert!((r.sup_ratio - want).abs() < 1e-14, "{}", r.sup_ratio);
        assert_eq!(r.argmax_x, 0.0);
    }

    #[test]
    fn csv_rows_reproduce_the_per_pair_records() {
        let cfg = small("15/2", 21);
        let mut buf = Vec::new();
        let rep = run_sweep_to(&cfg, Some(&mut buf)).unwrap();
        let rows = read_csv(&buf[..]).unwrap();
        let mut again = reduce_rows(&rows);
        again.sort_by_key(|p| (p.d, p.two_ell, p.two_m));
        assert_eq!(again, rep.per_pair);
        assert_eq!(rep, run_sweep(&cfg).map(|r| SweepReport { wall_time_ms: rep.wall_time_ms, ..r }).unwrap());
    }

    #[test]
    fn parallelism_does_not_change_the_report() {
        let one = run_sweep(&small("12", 41)).unwrap();
        let four = run_sweep(&SweepConfig { parallelism: 4, ..small("12", 41) }).unwrap();
        assert_eq!(one.to_json_timeless().unwrap(), four.to_json_timeless().unwrap());
    }

    #[test]
    fn small_sweep_passes_its_suites() {
        let rep = run_sweep(&SweepConfig { fit_c: true, ..small("20", 101) }).unwrap();
        assert!(rep.passed(), "{:?}", rep.suites);
        let g = &rep.global;
        assert!(g.c_univ.unwrap() <= 1.0 + 1e-9);
        for c in [g.c_h, g.c_h_core, g.c_h_theorem, g.c_b, g.c_exp] {
            assert!(c.unwrap().is_finite());
        }
        assert_eq!(g.fitted_c.len(), 2);
        let json = rep.to_json().unwrap();
        for key in ["\"config\"", "\"per_pair\"", "\"global\"", "\"suites\"", "\"wall_time_ms\""] {
            assert!(json.contains(key), "{key}");
        }
    }
}
