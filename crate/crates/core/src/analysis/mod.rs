//! Sweeps, transition points and bound checks built on the closed forms,
//! with the general route used as an audit.

pub mod bound;
pub mod figures;
pub mod output;
pub mod roots;
pub mod sweep;
pub mod thresholds;

pub use bound::{verify_ln2_bound, BoundGrid, BoundReport, PairBound};
pub use figures::{figure, Figure, FigureData, TemperatureRow};
pub use sweep::{sweep, OutputFormat, RRange, SweepConfig, SweepRow, SweepTable};
pub use thresholds::{
    adjudicate_critical_formula, default_adjudication_grid, find_death_birth, AdjudicationReport,
    AdjudicationRow, ThresholdResult, Verdict,
};
