//! Sweep configuration and its plain-text `key=value` form.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::envelopes::RegimeParams;
use crate::error::{Error, Result};
use crate::index::HalfInt;

/// Tolerance names understood by the sweep, with their defaults.
///
/// - `projection`: relative error and spread of the projection identity.
/// - `ratio_max`: ceiling on every per-pair sup-ratio.
/// - `universal_slack`: `C_univ <= 1 + slack`.
/// - `fit_growth`: allowed relative growth of the decay constant when the
///   `ell` range doubles.
pub const DEFAULT_TOLERANCES: [(&str, f64); 4] =
    [("projection", 1e-8), ("ratio_max", 100.0), ("universal_slack", 1e-9), ("fit_growth", 0.1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("output_format must be csv or json, got {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

fn as_display<S: Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Everything a sweep needs.
///
/// `parallelism` and `output_path` do not influence results and are left out
/// of the serialized echo, so reports from different runs compare equal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub d_list: Vec<i64>,
    #[serde(serialize_with = "as_display")]
    pub ell_max: HalfInt,
    pub x_grid_size: usize,
    pub epsilon: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub c: f64,
    pub tolerances: BTreeMap<String, f64>,
    /// Also fit the decay constant for every `d`.
    pub fit_c: bool,
    #[serde(skip)]
    pub parallelism: usize,
    #[serde(skip)]
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let rp = RegimeParams::default();
        SweepConfig {
            d_list: vec![2],
            ell_max: HalfInt::from_int(20),
            x_grid_size: 201,
            epsilon: rp.epsilon,
            k: rp.k,
            c: rp.c,
            tolerances: DEFAULT_TOLERANCES.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            fit_c: true,
            parallelism: 1,
            output_path: PathBuf::from("sweep.json"),
            output_format: OutputFormat::Json,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected a boolean, got {value:?}"))),
    }
}

impl SweepConfig {
    /// Parses a `key=value` file body on top of the defaults. Blank lines and
    /// lines starting with `#` are ignored. The result is validated.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        cfg.apply_kv_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies `key=value` lines without validating.
    pub fn apply_kv_str(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got {line:?}", no + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Sets one field by name. Tolerances are addressed as `tolerance.NAME`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "d_list" => {
                self.d_list = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_num(key, s))
                    .collect::<Result<_>>()?;
            }
            "ell_max" => {
                self.ell_max = value.parse().map_err(|e: Error| Error::Config(format!("ell_max: {e}")))?;
            }
            "x_grid_size" => self.x_grid_size = parse_num(key, value)?,
            "epsilon" => self.epsilon = parse_num(key, value)?,
            "K" | "k" => self.k = parse_num(key, value)?,
            "c" => self.c = parse_num(key, value)?,
            "fit_c" => self.fit_c = parse_bool(key, value)?,
            "parallelism" => self.parallelism = parse_num(key, value)?,
            "output_path" => self.output_path = PathBuf::from(value),
            "output_format" => self.output_format = value.parse()?,
            _ => {
                let Some(name) = key.strip_prefix("tolerance.") else {
                    return Err(Error::Config(format!("unknown key {key:?}")));
                };
                if !DEFAULT_TOLERANCES.iter().any(|&(n, _)| n == name) {
                    return Err(Error::Config(format!("unknown tolerance {name:?}")));
                }
                self.tolerances.insert(name.to_string(), parse_num(key, value)?);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_list.is_empty() {
            return Err(Error::Config("d_list is empty".into()));
        }
        if let Some(d) = self.d_list.iter().find(|&&d| d < 2) {
            return Err(Error::Config(format!("d_list entries must be >= 2, got {d}")));
        }
        if self.ell_max.twice() < 0 {
            return Err(Error::Config(format!("ell_max must be >= 0, got {}", self.ell_max)));
        }
        if self.x_grid_size < 3 || self.x_grid_size.is_multiple_of(2) {
            return Err(Error::Config(format!("x_grid_size must be odd and >= 3, got {}", self.x_grid_size)));
        }
        self.regime_params()?;
        for (name, &v) in &self.tolerances {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if self.parallelism < 1 {
            return Err(Error::Config("parallelism must be >= 1".into()));
        }
        Ok(())
    }

    pub fn regime_params(&self) -> Result<RegimeParams> {
        RegimeParams::new(self.epsilon, self.c, self.k).map_err(|e| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        })
    }

    /// A tolerance by name, falling back to its default.
    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES.iter().find(|&&(n, _)| n == name).map(|&(_, v)| v).unwrap_or(f64::NAN)
        })
    }
}
