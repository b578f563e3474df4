//! Sweeps, empirical constants, named invariant suites and report output.

pub mod config;
pub mod fit;
pub mod grid;
pub mod projection;
pub mod report;
pub mod suites;
pub mod sweep;

pub use config::{OutputFormat, SweepConfig};
pub use fit::{fit_decay_constant, fit_decay_constant_on, FitOutcome, FitRecord};
pub use projection::projection_identity_check;
pub use report::{read_csv, reduce_rows, GlobalRecord, PairRecord, SuiteResult, SweepReport, SweepRow, CSV_HEADER};
pub use suites::{run_suite, Scale, Suite};
pub use sweep::{run_sweep, run_sweep_to};
