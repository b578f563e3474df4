//! Report types, CSV rows and JSON emission.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::config::SweepConfig;
use crate::harness::fit::FitRecord;

pub const CSV_HEADER: &str = "two_ell,two_m,d,x,Y,X,envelope,ratio,regime";

/// One sampled point of a sweep.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct SweepRow {
    pub two_ell: i64,
    pub two_m: i64,
    pub d: i64,
    pub x: f64,
    #[serde(rename = "Y")]
    pub y: f64,
    #[serde(rename = "X")]
    pub x_tilde: f64,
    pub envelope: f64,
    pub ratio: f64,
    pub regime: String,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(format!("csv: {e}"))
}

/// A CSV writer with LF line endings.
pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

impl SweepRow {
    /// Seventeen significant digits, so every value reloads bit-exactly.
    pub fn write_to<W: Write>(&self, w: &mut csv::Writer<W>) -> Result<()> {
        let real = |v: f64| format!("{v:.16e}");
        w.write_record([
            self.two_ell.to_string(),
            self.two_m.to_string(),
            self.d.to_string(),
            real(self.x),
            real(self.y),
            real(self.x_tilde),
            real(self.envelope),
            real(self.ratio),
            self.regime.clone(),
        ])
        .map_err(csv_err)
    }
}

pub fn write_csv_header<W: Write>(w: &mut csv::Writer<W>) -> Result<()> {
    w.write_record(CSV_HEADER.split(',')).map_err(csv_err)
}

/// Reads a CSV written by a sweep, header included.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers().map_err(csv_err)?;
    if header.iter().ne(CSV_HEADER.split(',')) {
        return Err(Error::Io(format!("unexpected CSV header {header:?}")));
    }
    rdr.deserialize().map(|row| row.map_err(csv_err)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRecord {
    pub two_ell: i64,
    pub two_m: i64,
    pub d: i64,
    pub regime: String,
    pub sup_ratio: f64,
    pub argmax_x: f64,
}

/// Sup-ratio per `(two_ell, two_m, d)` recomputed from rows; ties go to the
/// smallest `x`. Output is sorted by `(d, two_ell, two_m)`.
pub fn reduce_rows(rows: &[SweepRow]) -> Vec<PairRecord> {
    let mut sorted: Vec<&SweepRow> = rows.iter().collect();
    sorted.sort_by(|a, b| (a.d, a.two_ell, a.two_m).cmp(&(b.d, b.two_ell, b.two_m)).then(a.x.total_cmp(&b.x)));
    let mut out: Vec<PairRecord> = Vec::new();
    for r in sorted {
        match out.last_mut() {
            Some(p) if (p.d, p.two_ell, p.two_m) == (r.d, r.two_ell, r.two_m) => {
                if r.ratio > p.sup_ratio {
                    p.sup_ratio = r.ratio;
                    p.argmax_x = r.x;
                }
            }
            _ => out.push(PairRecord {
                two_ell: r.two_ell,
                two_m: r.two_m,
                d: r.d,
                regime: r.regime.clone(),
                sup_ratio: r.ratio,
                argmax_x: r.x,
            }),
        }
    }
    out
}

/// Empirical constants, each the largest ratio of its kind; `None` when no
/// sample of that kind exists.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GlobalRecord {
    pub grid_size: usize,
    /// `|X~| / hermite_envelope` (corollary decay form).
    pub c_h: Option<f64>,
    /// `|X~| (ell^-1 + |x^2 - a^2|)^{1/4}`, no decay branch.
    pub c_h_core: Option<f64>,
    /// `|X~| / hermite_envelope` with the theorem's decay exponent.
    pub c_h_theorem: Option<f64>,
    /// `|X~| / bessel_envelope`.
    pub c_b: Option<f64>,
    /// `|Y| / exp_small_y_bound` over Bessel-regime pairs.
    pub c_exp: Option<f64>,
    /// `|Y| / universal_bound` over every pair.
    pub c_univ: Option<f64>,
    pub fitted_c: Vec<FitRecord>,
}

/// Outcome of one named invariant suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    /// The worst observed value of the suite's test quantity.
    pub measured: f64,
    /// The bound `measured` is compared against.
    pub threshold: f64,
    pub summary: String,
}

impl SuiteResult {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: &str, measured: f64, threshold: f64, summary: String) -> Self {
        SuiteResult { name: name.to_string(), passed: measured <= threshold, measured, threshold, summary }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub per_pair: Vec<PairRecord>,
    pub global: GlobalRecord,
    pub suites: Vec<SuiteResult>,
    pub wall_time_ms: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn failing_suites(&self) -> Vec<&str> {
        self.suites.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// JSON with `wall_time_ms` zeroed, for comparing runs.
    pub fn to_json_timeless(&self) -> Result<String> {
        SweepReport { wall_time_ms: 0, ..self.clone() }.to_json()
    }
}
