//! Gaussian steering measures and their asymmetry.
//!
//! Two independent routes are provided and are expected to agree: the general
//! measure built from the symplectic spectrum of the Schur complement of the
//! steering block, and closed forms for the states produced by the channel.
//! All values are in nats.

use serde::{Deserialize, Serialize};

use crate::channel::{reduced_ab, reduced_bbbar, ChannelParams};
use crate::error::{Error, Result};
use crate::symplectic::{
    check_bona_fide, min_hermitian_eigenvalue, restrict_to_partition, schur_complement,
    symplectic_eigenvalues, symplectic_form, CovarianceMatrix, ModePartition,
};

/// Values at or below this are reported as "not steerable".
pub const STEERABLE_THRESHOLD: f64 = 1e-12;

/// A steering value together with the signed quantity it was clamped from.
///
/// `signed` is `-Σ_j ln ν̄_j` over the whole symplectic spectrum of the Schur
/// complement, i.e. `½ ln(det A / det σ)`. It changes sign where steerability
/// appears or disappears, which is what the root finders need.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Steering {
    pub value: f64,
    pub signed: f64,
}

impl Steering {
    fn from_signed(signed: f64) -> Self {
        Self {
            value: signed.max(0.0),
            signed,
        }
    }

    pub fn is_steerable(&self) -> bool {
        self.value > STEERABLE_THRESHOLD
    }
}

fn require_physical(sigma: &CovarianceMatrix) -> Result<()> {
    let report = check_bona_fide(sigma);
    if !report.physical {
        return Err(Error::Domain(format!(
            "state violates the uncertainty principle (min eigenvalue of σ + iΩ is {:e})",
            report.min_eigenvalue
        )));
    }
    Ok(())
}

/// General measure: `max{0, -Σ_{ν̄_j < 1} ln ν̄_j}` over the symplectic
/// eigenvalues of the Schur complement of the steering block.
pub fn gaussian_steering_detailed(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<Steering> {
    partition.validate_for(sigma.n_modes())?;
    require_physical(sigma)?;
    let schur = schur_complement(sigma, partition)?;
    let spectrum = symplectic_eigenvalues(&schur.matrix)?;
    let value = -spectrum
        .iter()
        .filter(|&&nu| nu < 1.0)
        .map(|nu| nu.ln())
        .sum::<f64>();
    let signed = -spectrum.iter().map(|nu| nu.ln()).sum::<f64>();
    Ok(Steering {
        value: value.max(0.0),
        signed,
    })
}

pub fn gaussian_steering(sigma: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    gaussian_steering_detailed(sigma, partition).map(|g| g.value)
}

/// Determinant form for a single steered mode: `max{0, ½ ln(det A / det σ)}`,
/// with `σ` restricted to the modes of the partition.
pub fn steering_one_mode_steered_detailed(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<Steering> {
    if partition.steered().len() != 1 {
        return Err(Error::ContractViolation(format!(
            "determinant form needs exactly one steered mode, got {}",
            partition.steered().len()
        )));
    }
    let restricted = restrict_to_partition(sigma, partition)?;
    let steering: Vec<usize> = (0..2 * partition.steering().len()).collect();
    let det_a = restricted.entries().select(&steering, &steering).det();
    let det_sigma = restricted.det_dd();
    if !(det_a.hi() > 0.0 && det_sigma.hi() > 0.0) {
        return Err(Error::Domain(format!(
            "determinants must be positive (det A = {det_a:e}, det σ = {det_sigma:e})",
            det_a = det_a.to_f64(),
            det_sigma = det_sigma.to_f64()
        )));
    }
    Ok(Steering::from_signed(0.5 * (det_a / det_sigma).ln()))
}

pub fn steering_one_mode_steered(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<f64> {
    steering_one_mode_steered_detailed(sigma, partition).map(|g| g.value)
}

/// Minimum eigenvalue of `σ + i(0_A ⊕ Ω_B)` on the modes of the partition.
/// Non-negative exactly when the steered party cannot be steered by Gaussian
/// measurements of the steering party.
pub fn steering_criterion_min_eigenvalue(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<f64> {
    let restricted = restrict_to_partition(sigma, partition)?;
    let dim = restricted.dim();
    let k = 2 * partition.steering().len();
    let omega_b = symplectic_form(partition.steered().len())?;
    let mut imag = nalgebra::DMatrix::zeros(dim, dim);
    imag.view_mut((k, k), (dim - k, dim - k))
        .copy_from(&omega_b);
    Ok(min_hermitian_eigenvalue(restricted.matrix(), &imag))
}

/// Steering directions between the channel's modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    AToB,
    BToA,
    BToBbar,
    BbarToB,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::AToB,
        Direction::BToA,
        Direction::BToBbar,
        Direction::BbarToB,
    ];

    pub fn pair(self) -> Pair {
        match self {
            Direction::AToB | Direction::BToA => Pair::AB,
            Direction::BToBbar | Direction::BbarToB => Pair::BBbar,
        }
    }

    /// Partition on the pair's two-mode reduced state (mode 0 is the first
    /// named party of the pair).
    pub fn partition(self) -> ModePartition {
        let (steering, steered) = match self {
            Direction::AToB | Direction::BToBbar => (0, 1),
            Direction::BToA | Direction::BbarToB => (1, 0),
        };
        ModePartition::single(steering, steered).expect("distinct modes")
    }
}

/// The two bipartitions that the channel produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pair {
    /// Alice and Bob; forward is A→B.
    #[serde(alias = "AB")]
    AB,
    /// Bob and anti-Bob; forward is B→B̄.
    #[serde(alias = "BBbar")]
    BBbar,
}

impl Pair {
    pub fn forward(self) -> Direction {
        match self {
            Pair::AB => Direction::AToB,
            Pair::BBbar => Direction::BToBbar,
        }
    }

    pub fn backward(self) -> Direction {
        match self {
            Pair::AB => Direction::BToA,
            Pair::BBbar => Direction::BbarToB,
        }
    }

    pub fn reduced_state(self, params: ChannelParams) -> CovarianceMatrix {
        match self {
            Pair::AB => reduced_ab(params),
            Pair::BBbar => reduced_bbbar(params),
        }
    }
}

impl std::str::FromStr for Pair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ab" => Ok(Pair::AB),
            "bbbar" => Ok(Pair::BBbar),
            other => Err(Error::Config(format!(
                "unknown pair '{other}', expected 'ab' or 'bbbar'"
            ))),
        }
    }
}

/// Closed-form signed steering (before the `max{0, ·}` clamp). With
/// `C = cosh 2s`:
///
/// | direction | expression |
/// |-----------|------------|
/// | A→B | `ln(C / (cosh²r + C sinh²r))` |
/// | B→A | `ln((C cosh²r + sinh²r) / (cosh²r + C sinh²r))` |
/// | B→B̄ | `ln(cosh²r + sinh²r / C)` |
/// | B̄→B | `ln(sinh²r + cosh²r / C)` |
pub fn closed_form_signed(params: ChannelParams, direction: Direction) -> f64 {
    let c = (2.0 * params.s()).cosh();
    let (ch, sh) = (params.r().cosh(), params.r().sinh());
    let (ch2, sh2) = (ch * ch, sh * sh);
    match direction {
        Direction::AToB => (c / (ch2 + c * sh2)).ln(),
        Direction::BToA => ((c * ch2 + sh2) / (ch2 + c * sh2)).ln(),
        Direction::BToBbar => (ch2 + sh2 / c).ln(),
        Direction::BbarToB => (sh2 + ch2 / c).ln(),
    }
}

pub fn closed_form_steering(params: ChannelParams, direction: Direction) -> f64 {
    closed_form_signed(params, direction).max(0.0)
}

/// Both directional steerings of one bipartition and their asymmetry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    pub g_forward: f64,
    pub g_backward: f64,
    /// `|g_backward - g_forward|`.
    pub asymmetry: f64,
    pub signed_forward: f64,
    pub signed_backward: f64,
    pub forward_steerable: bool,
    pub backward_steerable: bool,
    pub partition: ModePartition,
    pub params: Option<ChannelParams>,
}

impl SteeringReport {
    fn from_parts(
        forward: Steering,
        backward: Steering,
        partition: ModePartition,
        params: Option<ChannelParams>,
    ) -> Self {
        Self {
            g_forward: forward.value,
            g_backward: backward.value,
            asymmetry: (backward.value - forward.value).abs(),
            signed_forward: forward.signed,
            signed_backward: backward.signed,
            forward_steerable: forward.is_steerable(),
            backward_steerable: backward.is_steerable(),
            partition,
            params,
        }
    }

    /// Exactly one of the two directions is steerable.
    pub fn one_way(&self) -> bool {
        self.forward_steerable != self.backward_steerable
    }
}

/// Steering in both directions across `partition`, general route.
pub fn steering_asymmetry(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<SteeringReport> {
    let forward = gaussian_steering_detailed(sigma, partition)?;
    let backward = gaussian_steering_detailed(sigma, &partition.swapped())?;
    Ok(SteeringReport::from_parts(
        forward,
        backward,
        partition.clone(),
        None,
    ))
}

/// Closed-form report for one of the channel's bipartitions.
pub fn closed_form_report(params: ChannelParams, pair: Pair) -> SteeringReport {
    let forward = Steering::from_signed(closed_form_signed(params, pair.forward()));
    let backward = Steering::from_signed(closed_form_signed(params, pair.backward()));
    let report =
        SteeringReport::from_parts(forward, backward, pair.forward().partition(), Some(params));
    debug_assert!(report.asymmetry < std::f64::consts::LN_2);
    report
}

/// General-route report on the pair's reduced state.
pub fn general_report(params: ChannelParams, pair: Pair) -> Result<SteeringReport> {
    let sigma = pair.reduced_state(params);
    let mut report = steering_asymmetry(&sigma, &pair.forward().partition())?;
    report.params = Some(params);
    Ok(report)
}
