//! Parameter sweeps over `(s, r)` producing the data behind the figures.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{temperature_or_zero, ChannelParams};
use crate::error::{Error, Result};
use crate::steering::{closed_form_report, general_report, Pair};

/// Every `AUDIT_STRIDE`-th row is recomputed through the general route.
pub const AUDIT_STRIDE: usize = 50;
/// Agreement required between the closed-form and general routes (nats).
pub const AUDIT_TOL: f64 = 1e-10;

pub const SWEEP_HEADER: [&str; 6] = ["s", "r", "T", "G_forward", "G_backward", "G_delta"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format '{other}', expected 'csv' or 'json'"
            ))),
        }
    }
}

/// `steps` evenly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl RRange {
    pub fn validate(&self) -> Result<()> {
        if !(self.min >= 0.0 && self.max > self.min && self.max.is_finite() && self.steps >= 2) {
            return Err(Error::Config(format!(
                "r range needs 0 <= min < max and steps >= 2, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.steps)
    }
}

pub(crate) fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + (max - min) * (i as f64 / last)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub pair: Pair,
    /// A single number is accepted in place of a list.
    #[serde(deserialize_with = "one_or_many")]
    pub s_values: Vec<f64>,
    pub r_range: RRange,
    #[serde(default = "default_omega")]
    pub omega: f64,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn one_or_many<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<f64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(f64),
        Many(Vec<f64>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(s) => vec![s],
        OneOrMany::Many(v) => v,
    })
}

fn default_omega() -> f64 {
    1.0
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.r_range.validate()?;
        if self.s_values.is_empty() {
            return Err(Error::Config("no s values given".into()));
        }
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::Config(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        for &s in &self.s_values {
            ChannelParams::new(s, self.r_range.max)
                .map_err(|e| Error::Config(format!("s = {s}: {e}")))?;
        }
        Ok(())
    }
}

/// One `(s, r)` point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub s: f64,
    pub r: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "G_forward")]
    pub g_forward: f64,
    #[serde(rename = "G_backward")]
    pub g_backward: f64,
    #[serde(rename = "G_delta")]
    pub g_delta: f64,
}

impl SweepRow {
    pub fn values(&self) -> Vec<f64> {
        vec![
            self.s,
            self.r,
            self.temperature,
            self.g_forward,
            self.g_backward,
            self.g_delta,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub pair: Pair,
    pub rows: Vec<SweepRow>,
    /// Number of rows re-derived through the general route.
    pub audited: usize,
}

fn compute_row(pair: Pair, s: f64, r: f64, omega: f64, audit: bool) -> Result<SweepRow> {
    let params = ChannelParams::new(s, r)?;
    let report = closed_form_report(params, pair);
    if audit {
        let general = general_report(params, pair)?;
        for (closed, gen, label) in [
            (report.g_forward, general.g_forward, "forward"),
            (report.g_backward, general.g_backward, "backward"),
        ] {
            if !((closed - gen).abs() <= AUDIT_TOL) {
                return Err(Error::AuditMismatch {
                    context: format!("{pair:?} {label} at s = {s}, r = {r}"),
                    closed_form: closed,
                    general: gen,
                });
            }
        }
    }
    Ok(SweepRow {
        s,
        r,
        temperature: temperature_or_zero(omega, r)?,
        g_forward: report.g_forward,
        g_backward: report.g_backward,
        g_delta: report.asymmetry,
    })
}

/// Evaluates the grid (`s` outer, `r` inner). Rows are computed in parallel
/// on the ambient rayon pool and collected by index, so the output does not
/// depend on the number of workers.
pub fn sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let r_values = config.r_range.values();
    let n_r = r_values.len();
    let total = config.s_values.len() * n_r;
    let rows = (0..total)
        .into_par_iter()
        .map(|i| {
            let (s, r) = (config.s_values[i / n_r], r_values[i % n_r]);
            compute_row(config.pair, s, r, config.omega, i % AUDIT_STRIDE == 0)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        pair: config.pair,
        rows,
        audited: total.div_ceil(AUDIT_STRIDE),
    })
}
