//! Fixed datasets for the four figures.
//!
//! | name  | content |
//! |-------|---------|
//! | fig1a | Alice–Bob steering vs `r`, `s = 1`, `r ∈ [0, 2]`, 400 points |
//! | fig1b | Hawking temperature vs `r` at the given `Ω`, `r ∈ (0, 2]`, 400 points |
//! | fig2  | Alice–Bob sweep over `s, r ∈ [0, 2]`, 200 × 200 |
//! | fig3  | Bob–anti-Bob steering vs `r`, `s = 1`, `r ∈ [0, 2]`, 400 points |

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::output::{write_json, write_numeric_csv};
use super::sweep::{linspace, sweep, OutputFormat, RRange, SweepConfig, SweepTable, SWEEP_HEADER};
use crate::channel::temperature_from_r;
use crate::error::{Error, Result};
use crate::steering::Pair;

pub const CURVE_POINTS: usize = 400;
pub const SURFACE_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::Fig1a, Figure::Fig1b, Figure::Fig2, Figure::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1a => "fig1a",
            Figure::Fig1b => "fig1b",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown figure '{s}', expected one of fig1a, fig1b, fig2, fig3"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureRow {
    pub r: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureData {
    Sweep(SweepTable),
    Temperature(Vec<TemperatureRow>),
}

impl FigureData {
    pub fn write<W: Write>(&self, out: W, format: OutputFormat) -> Result<()> {
        match (self, format) {
            (FigureData::Sweep(table), OutputFormat::Csv) => write_sweep(out, table),
            (FigureData::Sweep(table), OutputFormat::Json) => write_json(out, &table.rows),
            (FigureData::Temperature(rows), OutputFormat::Csv) => write_numeric_csv(
                out,
                &["r", "T"],
                rows.iter().map(|row| vec![row.r, row.temperature]),
            ),
            (FigureData::Temperature(rows), OutputFormat::Json) => write_json(out, rows),
        }
    }
}

/// CSV with the sweep header and `%.17g` values.
pub fn write_sweep<W: Write>(out: W, table: &SweepTable) -> Result<()> {
    write_numeric_csv(
        out,
        &SWEEP_HEADER,
        table.rows.iter().map(|row| row.values()),
    )
}

fn curve(pair: Pair, omega: f64) -> SweepConfig {
    SweepConfig {
        pair,
        s_values: vec![1.0],
        r_range: RRange {
            min: 0.0,
            max: 2.0,
            steps: CURVE_POINTS,
        },
        omega,
        output_path: None,
        format: OutputFormat::Csv,
    }
}

/// The sweep configuration behind a figure (`None` for fig1b).
pub fn figure_config(figure: Figure, omega: f64) -> Option<SweepConfig> {
    match figure {
        Figure::Fig1a => Some(curve(Pair::AB, omega)),
        Figure::Fig3 => Some(curve(Pair::BBbar, omega)),
        Figure::Fig2 => Some(SweepConfig {
            s_values: linspace(0.0, 2.0, SURFACE_POINTS),
            r_range: RRange {
                min: 0.0,
                max: 2.0,
                steps: SURFACE_POINTS,
            },
            ..curve(Pair::AB, omega)
        }),
        Figure::Fig1b => None,
    }
}

pub fn figure(figure: Figure, omega: f64) -> Result<FigureData> {
    match figure_config(figure, omega) {
        Some(config) => sweep(&config).map(FigureData::Sweep),
        None => (1..=CURVE_POINTS)
            .map(|i| {
                let r = 2.0 * i as f64 / CURVE_POINTS as f64;
                Ok(TemperatureRow {
                    r,
                    temperature: temperature_from_r(omega, r)?,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(FigureData::Temperature),
    }
}
