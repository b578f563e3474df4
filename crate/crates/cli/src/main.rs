//! `ultrasph`: evaluate ultraspherical functions and envelopes, run sweeps
//! and invariant suites.
//!
//! Exit codes: 0 on success, 1 when an asserted suite fails, 2 on I/O,
//! configuration or argument errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ultraspherical::asymptotics::{ode_residual_raw, zeta_rhs};
use ultraspherical::envelopes::{universal_bound_with, SecondBound};
use ultraspherical::harness::{
    fit_decay_constant_on, projection_identity_check, run_suite, run_sweep_to, FitOutcome, OutputFormat, Scale,
    Suite, SweepConfig, SweepReport,
};
use ultraspherical::{
    bessel_envelope, eval_x, eval_y, exp_small_y_bound, hermite_envelope, l_function, ode_residual, sign_check,
    zeta_solve, EvalPoint, Error, HalfInt, IndexPair, Regime, RegimeParams,
};

#[derive(Parser)]
#[command(name = "ultrasph", version, about = "Ultraspherical function evaluation and envelope verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PairArgs {
    /// Degree ell (integer or n/2).
    #[arg(long)]
    ell: HalfInt,
    /// Order m (integer or n/2).
    #[arg(long)]
    m: HalfInt,
}

impl PairArgs {
    fn pair(&self) -> Result<IndexPair, Error> {
        IndexPair::new(self.ell, self.m)
    }
}

#[derive(Args)]
struct RegimeArgs {
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    c: f64,
    #[arg(long = "k", visible_alias = "K", default_value_t = 2.0)]
    k: f64,
}

/// Sweep flags; each one overrides the same key of `--config`.
#[derive(Args)]
struct SweepArgs {
    /// Plain-text `key=value` file, applied before the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated dimensions, e.g. `2,3,4`.
    #[arg(long)]
    d_list: Option<String>,
    #[arg(long)]
    ell_max: Option<String>,
    #[arg(long)]
    x_grid_size: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long = "k", visible_alias = "K")]
    k: Option<String>,
    #[arg(long)]
    c: Option<String>,
    /// `NAME=VALUE`, repeatable.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    /// `true` or `false`.
    #[arg(long)]
    fit_c: Option<String>,
    #[arg(long)]
    parallelism: Option<String>,
    #[arg(long, short = 'o')]
    output_path: Option<String>,
    /// `csv` or `json`.
    #[arg(long)]
    output_format: Option<String>,
}

impl SweepArgs {
    fn resolve(&self) -> Result<SweepConfig, Error> {
        let mut cfg = SweepConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("reading {}: {e}", path.display())))?;
            cfg.apply_kv_str(&text)?;
        }
        let flags = [
            ("d_list", &self.d_list),
            ("ell_max", &self.ell_max),
            ("x_grid_size", &self.x_grid_size),
            ("epsilon", &self.epsilon),
            ("K", &self.k),
            ("c", &self.c),
            ("fit_c", &self.fit_c),
            ("parallelism", &self.parallelism),
            ("output_path", &self.output_path),
            ("output_format", &self.output_format),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        for t in &self.tolerances {
            let (name, value) =
                t.split_once('=').ok_or_else(|| Error::Config(format!("--tolerance expects NAME=VALUE, got {t:?}")))?;
            cfg.set(&format!("tolerance.{}", name.trim()), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Y (and X~ when --d is given) at one or more points.
    Eval {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
    },
    /// Regime, envelope and universal bounds of a pair at one point.
    Envelope {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 2)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[command(flatten)]
        regime: RegimeArgs,
    },
    /// Solve the zeta map at x.
    Zeta {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Hermite/Bessel split: the map is defined for `m <= epsilon ell`.
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
    },
    /// ODE residual and sign data of L at x.
    Ode {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
    /// Both sides of the projection-kernel identity.
    Projection {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        ell: HalfInt,
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        x: Vec<f64>,
    },
    /// Sweep all pairs up to ell_max and write a report.
    Sweep(SweepArgs),
    /// Fit the decay constant c on the region |x| >= K a.
    FitC {
        #[arg(long, default_value_t = 2)]
        d: i64,
        #[arg(long, default_value = "200")]
        ell_max: HalfInt,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long = "k", visible_alias = "K", default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        /// Allowed relative growth of the constant when the range doubles.
        #[arg(long, default_value_t = 0.1)]
        growth: f64,
    },
    /// Run named invariant suites (all when --suite is absent).
    Selftest {
        /// Suite name, repeatable. See --list.
        #[arg(long = "suite")]
        suites: Vec<Suite>,
        /// Reduced sizes.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        /// Print suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Error(Error),
    Assertion(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(names)) => {
            eprintln!("assertion failure in: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Eval { pair, d, x } => {
            let p = pair.pair()?;
            for x in x {
                let pt = EvalPoint::new(x)?;
                match d {
                    Some(d) => println!("x={x:e} Y={:.16e} X={:.16e}", eval_y(p, &pt)?, eval_x(d, p, &pt)?),
                    None => println!("x={x:e} Y={:.16e}", eval_y(p, &pt)?),
                }
            }
        }
        Command::Envelope { pair, d, x, regime } => {
            let p = pair.pair()?;
            let rp = RegimeParams::new(regime.epsilon, regime.c, regime.k)?;
            let pt = EvalPoint::new(x)?;
            let t = p.transition()?;
            let reg = Regime::of(p, rp.epsilon);
            println!("pair {p} regime {}", reg.as_str());
            println!("a {:.16e}", t.a);
            println!("b {:.16e}", t.b);
            if let Some(xbar) = t.xbar {
                println!("xbar {xbar:.16e}");
            }
            let env = match reg {
                Regime::Hermite => hermite_envelope(d, p, &pt, &rp)?,
                Regime::Bessel => bessel_envelope(d, p, &pt, &rp)?,
            };
            println!("envelope {env:.16e}");
            if reg == Regime::Bessel {
                println!("exp_small_y {:.16e}", exp_small_y_bound(p, &pt)?);
            }
            println!("universal {:.16e}", universal_bound_with(p, &pt, SecondBound::Sharp)?);
            println!("universal_literal {:.16e}", universal_bound_with(p, &pt, SecondBound::Literal)?);
            println!("|X| {:.16e}", eval_x(d, p, &pt)?.abs());
        }
        Command::Zeta { pair, x, epsilon } => {
            let p = pair.pair()?;
            let s = zeta_solve(p, x, epsilon)?;
            println!("zeta {:.16e}", s.zeta);
            println!("zeta_minus_b2 {:.16e}", s.offset);
            println!("rhs {:.16e}", zeta_rhs(p, x)?);
            println!("residual {:.3e}", s.residual);
        }
        Command::Ode { pair, x, h } => {
            let p = pair.pair()?;
            println!("L {:.16e}", l_function(p, x)?);
            println!("residual {:.6e}", ode_residual(p, x, h)?);
            println!("residual_raw {:.6e}", ode_residual_raw(p, x, h)?);
            // The sign claim only concerns (x-bar, 1).
            let beyond_xbar = p.transition()?.xbar.is_some_and(|xb| x > xb && x < 1.0);
            match if beyond_xbar { sign_check(p, x)? } else { None } {
                Some(ok) => println!("sign_claim {}", if ok { "holds" } else { "fails" }),
                None => println!("sign_claim not-applicable"),
            }
        }
        Command::Projection { d, ell, x } => {
            let mut worst: f64 = 0.0;
            for x in x {
                let (lhs, rhs) = projection_identity_check(d, ell, x)?;
                let rel = (lhs / rhs - 1.0).abs();
                worst = worst.max(rel);
                println!("x={x:e} lhs={lhs:.16e} rhs={rhs:.16e} rel_err={rel:.3e}");
            }
            if worst > 1e-8 {
                return Err(Failure::Assertion(vec!["projection".into()]));
            }
        }
        Command::Sweep(args) => sweep(&args.resolve()?)?,
        Command::FitC { d, ell_max, epsilon, k, grid, growth } => {
            match fit_decay_constant_on(d, ell_max, epsilon, k, grid, growth)? {
                FitOutcome::Fitted { c, constant, samples } => {
                    println!("c {c:.6}");
                    println!("constant {constant:.6e}");
                    println!("samples {samples}");
                }
                FitOutcome::EmptyRegion => println!("empty region: no sample with |x| >= K a"),
            }
        }
        Command::Selftest { suites, quick, parallelism, list } => {
            if list {
                for s in Suite::ALL {
                    match s.criterion() {
                        Some(n) => println!("{s} (criterion {n})"),
                        None => println!("{s}"),
                    }
                }
                return Ok(());
            }
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites };
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let mut failed = Vec::new();
            for s in suites {
                let r = run_suite(s, scale, parallelism)?;
                println!(
                    "{} {}: measured {:.6e}, threshold {:.6e}; {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.measured,
                    r.threshold,
                    r.summary
                );
                if !r.passed {
                    failed.push(r.name);
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Assertion(failed));
            }
        }
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, report: &SweepReport) -> Result<(), Error> {
    let mut w = create(path)?;
    w.write_all(report.to_json()?.as_bytes())?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// CSV goes to `output_path` with the JSON report beside it at
/// `output_path.json`; in JSON mode only the report is written.
fn sweep(cfg: &SweepConfig) -> Result<(), Failure> {
    let report = match cfg.output_format {
        OutputFormat::Json => {
            // Fail on an unwritable path before doing the work.
            let file = create(&cfg.output_path)?;
            drop(file);
            let report = run_sweep_to(cfg, None::<&mut std::io::Sink>)?;
            write_json(&cfg.output_path, &report)?;
            report
        }
        OutputFormat::Csv => {
            let mut json_path = cfg.output_path.clone().into_os_string();
            json_path.push(".json");
            let json_path = PathBuf::from(json_path);
            drop(create(&json_path)?);
            let mut w = create(&cfg.output_path)?;
            let report = run_sweep_to(cfg, Some(&mut w))?;
            w.flush().map_err(Error::from)?;
            write_json(&json_path, &report)?;
            report
        }
    };
    let g = &report.global;
    let show = |v: Option<f64>| v.map_or("n/a".to_string(), |v| format!("{v:.6e}"));
    println!("pairs {}", report.per_pair.len());
    println!(
        "C_H {} C_H_core {} C_B {} C_exp {} C_univ {}",
        show(g.c_h),
        show(g.c_h_core),
        show(g.c_b),
        show(g.c_exp),
        show(g.c_univ)
    );
    for f in &g.fitted_c {
        match f.outcome {
            FitOutcome::Fitted { c, constant, .. } => println!("fitted c (d={}) {c:.6}, constant {constant:.6e}", f.d),
            FitOutcome::EmptyRegion => println!("fitted c (d={}) empty region", f.d),
        }
    }
    for s in &report.suites {
        println!("{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.summary);
    }
    println!("wall time {} ms", report.wall_time_ms);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Assertion(report.failing_suites().into_iter().map(String::from).collect()))
    }
}
