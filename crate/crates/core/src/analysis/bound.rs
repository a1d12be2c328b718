//! Exhaustive scan of the steering asymmetry against the `ln 2` ceiling.

use std::f64::consts::LN_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::steering::{closed_form_report, Pair};

/// Square grid `s, r ∈ [0, max]` sampled at `k · step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundGrid {
    pub s_max: f64,
    pub r_max: f64,
    pub step: f64,
}

impl Default for BoundGrid {
    fn default() -> Self {
        Self {
            s_max: 6.0,
            r_max: 6.0,
            step: 0.01,
        }
    }
}

impl BoundGrid {
    fn validate(&self) -> Result<()> {
        let ok = self.step > 0.0
            && self.s_max >= 0.0
            && self.r_max >= 0.0
            && self.step.is_finite()
            && self.s_max.is_finite()
            && self.r_max.is_finite();
        if !ok {
            return Err(Error::Config(format!("invalid bound-check grid {self:?}")));
        }
        Ok(())
    }

    fn points(max: f64, step: f64) -> Vec<f64> {
        let n = (max / step + 1e-9).floor() as usize;
        (0..=n).map(|k| k as f64 * step).collect()
    }

    pub fn s_values(&self) -> Vec<f64> {
        Self::points(self.s_max, self.step)
    }

    pub fn r_values(&self) -> Vec<f64> {
        Self::points(self.r_max, self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairBound {
    pub pair: Pair,
    pub supremum: f64,
    pub s_at_supremum: f64,
    pub r_at_supremum: f64,
    /// `ln 2 - supremum`.
    pub margin: f64,
    pub below_ln2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub grid: BoundGrid,
    pub ln2: f64,
    pub pairs: Vec<PairBound>,
    pub holds: bool,
}

/// Largest asymmetry on one `s` slice, with its `r`.
pub fn slice_maximum(s: f64, pair: Pair, r_values: &[f64]) -> Result<(f64, f64)> {
    let mut best = (0.0, f64::NEG_INFINITY);
    for &r in r_values {
        let value = closed_form_report(ChannelParams::new(s, r)?, pair).asymmetry;
        if value > best.1 {
            best = (r, value);
        }
    }
    Ok(best)
}

/// Scans `G^Δ` for both bipartitions and checks the supremum stays below `ln 2`.
pub fn verify_ln2_bound(grid: BoundGrid) -> Result<BoundReport> {
    grid.validate()?;
    let s_values = grid.s_values();
    let r_values = grid.r_values();
    let pairs = [Pair::AB, Pair::BBbar]
        .into_iter()
        .map(|pair| {
            let slices: Vec<(f64, f64)> = s_values
                .par_iter()
                .map(|&s| slice_maximum(s, pair, &r_values))
                .collect::<Result<_>>()?;
            // first occurrence wins on ties, independent of scheduling
            let (idx, &(r_at, supremum)) = slices
                .iter()
                .enumerate()
                .fold(
                    None,
                    |best: Option<(usize, &(f64, f64))>, cand| match best {
                        Some(b) if b.1 .1 >= cand.1 .1 => Some(b),
                        _ => Some(cand),
                    },
                )
                .expect("non-empty grid");
            Ok(PairBound {
                pair,
                supremum,
                s_at_supremum: s_values[idx],
                r_at_supremum: r_at,
                margin: LN_2 - supremum,
                below_ln2: supremum < LN_2,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport {
        grid,
        ln2: LN_2,
        holds: pairs.iter().all(|p| p.below_ln2),
        pairs,
    })
}
