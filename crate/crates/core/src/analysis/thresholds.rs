//! Sudden-death / sudden-birth roots, asymmetry peaks and the critical-point
//! relation between `s` and `r`.

use serde::{Deserialize, Serialize};

use super::roots::{bisect, golden_section_max};
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::steering::{closed_form_report, closed_form_signed, Direction, Pair};

/// Target on `|signed steering|` at an accepted root.
pub const ROOT_FTOL: f64 = 1e-12;
pub const MAX_BISECTION_ITERATIONS: usize = 200;
/// Roots closer than this count as the same transition point.
pub const COINCIDENCE_TOL: f64 = 1e-8;
/// Allowed distance between an asymmetry peak and the matching root.
pub const PEAK_TOL: f64 = 1e-6;

const DEATH_BRACKET_GAP: f64 = 1e-9;
const BIRTH_BRACKET_HI: f64 = 3.0;
const PEAK_BRACKET_HI: f64 = 3.0;
const PEAK_XTOL: f64 = 1e-11;

/// Transition points and asymmetry peaks at one squeezing value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub s: f64,
    /// Where A→B steering dies (`None` when there is no sign change, e.g. s = 0).
    #[serde(rename = "r_death_AtoB")]
    pub r_death_a_to_b: Option<f64>,
    /// Where B̄→B steering is born.
    #[serde(rename = "r_birth_BbartoB")]
    pub r_birth_bbar_to_b: Option<f64>,
    #[serde(rename = "r_max_asymmetry_AB")]
    pub r_max_asymmetry_ab: f64,
    #[serde(rename = "r_max_asymmetry_BBbar")]
    pub r_max_asymmetry_bbbar: f64,
    /// Peak asymmetry of the Alice–Bob pair.
    pub asymmetry_at_max: f64,
    #[serde(rename = "asymmetry_at_max_BBbar")]
    pub asymmetry_at_max_bbbar: f64,
    /// Widest final bracket of the two bisections.
    pub bracket_width: f64,
    pub death_residual: Option<f64>,
    pub birth_residual: Option<f64>,
    pub roots_coincide: bool,
    /// `|argmax G^Δ_AB - r_death|`.
    pub peak_offset_ab: Option<f64>,
    /// `|argmax G^Δ_BB̄ - r_birth|`.
    pub peak_offset_bbbar: Option<f64>,
}

fn signed(s: f64, r: f64, direction: Direction) -> f64 {
    match ChannelParams::new(s, r) {
        Ok(p) => closed_form_signed(p, direction),
        Err(_) => f64::NAN,
    }
}

fn asymmetry(s: f64, r: f64, pair: Pair) -> f64 {
    match ChannelParams::new(s, r) {
        Ok(p) => closed_form_report(p, pair).asymmetry,
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Bisects the unclamped A→B and B̄→B steerings and locates the asymmetry
/// peaks of both pairs by golden-section search.
pub fn find_death_birth(s: f64) -> Result<ThresholdResult> {
    ChannelParams::new(s, 0.0)?;
    // A→B is negative for every s once sinh² r ≥ 1.
    let death_hi = 1f64.asinh() - DEATH_BRACKET_GAP;
    let death = bisect(
        |r| signed(s, r, Direction::AToB),
        0.0,
        death_hi,
        ROOT_FTOL,
        MAX_BISECTION_ITERATIONS,
    );
    let birth = bisect(
        |r| signed(s, r, Direction::BbarToB),
        0.0,
        BIRTH_BRACKET_HI,
        ROOT_FTOL,
        MAX_BISECTION_ITERATIONS,
    );
    let (r_peak_ab, peak_ab) = golden_section_max(
        |r| asymmetry(s, r, Pair::AB),
        0.0,
        PEAK_BRACKET_HI,
        PEAK_XTOL,
        500,
    );
    let (r_peak_bb, peak_bb) = golden_section_max(
        |r| asymmetry(s, r, Pair::BBbar),
        0.0,
        PEAK_BRACKET_HI,
        PEAK_XTOL,
        500,
    );

    let r_death = death.map(|b| b.root);
    let r_birth = birth.map(|b| b.root);
    let roots_coincide = match (r_death, r_birth) {
        (Some(d), Some(b)) => (d - b).abs() < COINCIDENCE_TOL,
        _ => false,
    };
    let bracket_width = death
        .iter()
        .chain(birth.iter())
        .map(|b| b.bracket_width)
        .fold(0.0, f64::max);

    Ok(ThresholdResult {
        s,
        r_death_a_to_b: r_death,
        r_birth_bbar_to_b: r_birth,
        r_max_asymmetry_ab: r_peak_ab,
        r_max_asymmetry_bbbar: r_peak_bb,
        asymmetry_at_max: peak_ab,
        asymmetry_at_max_bbbar: peak_bb,
        bracket_width,
        death_residual: death.map(|b| b.residual),
        birth_residual: birth.map(|b| b.residual),
        roots_coincide,
        peak_offset_ab: r_death.map(|d| (r_peak_ab - d).abs()),
        peak_offset_bbbar: r_birth.map(|b| (r_peak_bb - b).abs()),
    })
}

/// Which reading of the critical relation the numerical root satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `s = arccosh(cosh² r / (1 - sinh² r))`.
    AsPrinted,
    /// `2s = arccosh(cosh² r / (1 - sinh² r))`.
    Doubled,
    Both,
    Neither,
}

/// Residual below which a candidate relation counts as satisfied.
pub const ADJUDICATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationRow {
    pub s: f64,
    pub r_star: f64,
    /// `arccosh(cosh² r* / (1 - sinh² r*))`.
    pub arccosh_value: f64,
    pub residual_as_printed: f64,
    pub residual_doubled: f64,
    /// `cosh(2s)(1 - sinh² r*) - cosh² r*`.
    pub residual_product: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationReport {
    pub rows: Vec<AdjudicationRow>,
    /// Common verdict of every row, `Neither` if they disagree.
    pub verdict: Verdict,
    pub max_residual_as_printed: f64,
    pub max_residual_doubled: f64,
    /// `r*(s)` strictly increasing along the grid.
    pub r_star_increasing: bool,
}

/// Default grid `s = 0.1, 0.2, ..., 3.0`.
pub fn default_adjudication_grid() -> Vec<f64> {
    (1..=30).map(|k| k as f64 / 10.0).collect()
}

/// Tests both readings of the critical-point formula against the numerically
/// located A→B death root at each `s`.
pub fn adjudicate_critical_formula(s_grid: &[f64]) -> Result<AdjudicationReport> {
    let mut rows = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        if !(s > 0.0 && s <= 3.0) {
            return Err(Error::Domain(format!(
                "adjudication grid values must lie in (0, 3], got {s}"
            )));
        }
        let thresholds = find_death_birth(s)?;
        let r_star = thresholds
            .r_death_a_to_b
            .ok_or_else(|| Error::Domain(format!("no A→B death root found at s = {s}")))?;
        let (ch, sh) = (r_star.cosh(), r_star.sinh());
        let (ch2, sh2) = (ch * ch, sh * sh);
        let arccosh_value = (ch2 / (1.0 - sh2)).acosh();
        let residual_as_printed = s - arccosh_value;
        let residual_doubled = 2.0 * s - arccosh_value;
        let verdict = match (
            residual_as_printed.abs() < ADJUDICATION_TOL,
            residual_doubled.abs() < ADJUDICATION_TOL,
        ) {
            (true, true) => Verdict::Both,
            (true, false) => Verdict::AsPrinted,
            (false, true) => Verdict::Doubled,
            (false, false) => Verdict::Neither,
        };
        rows.push(AdjudicationRow {
            s,
            r_star,
            arccosh_value,
            residual_as_printed,
            residual_doubled,
            residual_product: (2.0 * s).cosh() * (1.0 - sh2) - ch2,
            verdict,
        });
    }
    let verdict = match rows.first() {
        Some(first) if rows.iter().all(|row| row.verdict == first.verdict) => first.verdict,
        _ => Verdict::Neither,
    };
    let max_abs =
        |f: fn(&AdjudicationRow) -> f64| rows.iter().map(f).map(f64::abs).fold(0.0, f64::max);
    Ok(AdjudicationReport {
        verdict,
        max_residual_as_printed: max_abs(|row| row.residual_as_printed),
        max_residual_doubled: max_abs(|row| row.residual_doubled),
        r_star_increasing: rows.windows(2).all(|w| w[1].r_star > w[0].r_star),
        rows,
    })
}
