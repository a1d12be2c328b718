//! Gaussian steering across a Hawking-radiation channel.
//!
//! A two-mode squeezed state shared by Alice (`A`) and Bob (`B`) is sent
//! through the amplification channel that couples Bob's mode to an anti-Bob
//! mode `B̄` behind the horizon. This crate provides the covariance-matrix
//! calculus, the channel, Gaussian steering in both directions with its
//! asymmetry, and the sweeps and root searches used to characterise it.
//!
//! ```
//! use gsteer_core::{closed_form_steering, general_report, ChannelParams, Direction, Pair};
//!
//! let p = ChannelParams::new(1.0, 0.5).unwrap();
//! let g = closed_form_steering(p, Direction::AToB);
//! let general = general_report(p, Pair::AB).unwrap();
//! assert!((g - general.g_forward).abs() < 1e-10);
//! ```

// Negated comparisons are how NaN gets rejected by the range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference values in tests are written to 40 digits on purpose.
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod analysis;
pub mod channel;
pub mod dd;
pub mod error;
pub mod states;
pub mod steering;
pub mod symplectic;

pub use channel::{
    dilate, r_from_surface_gravity, r_from_temperature, reduced_ab, reduced_bbbar,
    squeezer_symplectic, temperature_from_r, temperature_or_zero, ChannelParams, HawkingParam,
    HawkingSource, ThreeModeState,
};
pub use error::{Error, Result};
pub use states::{two_mode_squeezed, vacuum, SqueezingParam};
pub use steering::{
    closed_form_report, closed_form_signed, closed_form_steering, gaussian_steering,
    gaussian_steering_detailed, general_report, steering_asymmetry,
    steering_criterion_min_eigenvalue, steering_one_mode_steered, Direction, Pair, Steering,
    SteeringReport,
};
pub use symplectic::{
    apply_symplectic, check_bona_fide, direct_sum, partial_trace, renyi2_entropy, schur_complement,
    symplectic_eigenvalues, symplectic_form, BonaFide, CovarianceMatrix, ModePartition,
    SchurComplement, SymplecticMatrix,
};
