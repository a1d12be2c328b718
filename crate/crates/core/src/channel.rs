//! The Hawking-radiation channel on Bob's mode.
//!
//! Bob's mode `B` and its partner `B̄` behind the horizon are coupled by a
//! two-mode squeezer whose strength `r` is fixed by the mode frequency and the
//! Hawking temperature through `sinh² r = 1 / (e^{Ω/T} - 1)`. Mode labels in
//! the three-mode state are `A = 0`, `B = 1`, `B̄ = 2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dd::{Dd, DdMatrix};
use crate::error::{Error, Result};
use crate::states::{check_squeezing, two_mode_squeezed, vacuum, SqueezingParam};
use crate::symplectic::{apply_symplectic, direct_sum, CovarianceMatrix, SymplecticMatrix};

pub const MODE_A: usize = 0;
pub const MODE_B: usize = 1;
pub const MODE_BBAR: usize = 2;

/// Where a Hawking squeezing value came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HawkingSource {
    Direct,
    Temperature { omega: f64, temperature: f64 },
    SurfaceGravity { omega: f64, kappa: f64 },
}

/// Dimensionless Hawking squeezing `r ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HawkingParam {
    r: f64,
    source: HawkingSource,
}

impl HawkingParam {
    pub fn new(r: f64) -> Result<Self> {
        Ok(Self {
            r: check_squeezing(r, "Hawking parameter r")?,
            source: HawkingSource::Direct,
        })
    }

    pub fn value(self) -> f64 {
        self.r
    }

    pub fn source(self) -> HawkingSource {
        self.source
    }
}

/// The `(s, r)` pair that fixes every state in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub s: SqueezingParam,
    pub r: HawkingParam,
}

impl ChannelParams {
    pub fn new(s: f64, r: f64) -> Result<Self> {
        Ok(Self {
            s: SqueezingParam::new(s)?,
            r: HawkingParam::new(r)?,
        })
    }

    pub fn s(&self) -> f64 {
        self.s.value()
    }

    pub fn r(&self) -> f64 {
        self.r.value()
    }
}

fn check_positive(value: f64, what: &str) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Domain(format!(
            "{what} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

/// `r = arcsinh((e^{Ω/T} - 1)^{-1/2})`, strictly increasing in `T`.
pub fn r_from_temperature(omega: f64, temperature: f64) -> Result<HawkingParam> {
    check_positive(omega, "mode frequency Ω")?;
    check_positive(temperature, "Hawking temperature T")?;
    let sinh_sq = 1.0 / (omega / temperature).exp_m1();
    let r = sinh_sq.sqrt().asinh();
    let r = check_squeezing(r, "Hawking parameter r derived from temperature")?;
    Ok(HawkingParam {
        r,
        source: HawkingSource::Temperature { omega, temperature },
    })
}

/// Same mapping entered through the surface gravity, `T = κ / 2π`.
pub fn r_from_surface_gravity(omega: f64, kappa: f64) -> Result<HawkingParam> {
    check_positive(kappa, "surface gravity κ")?;
    let param = r_from_temperature(omega, kappa / (2.0 * PI))?;
    Ok(HawkingParam {
        source: HawkingSource::SurfaceGravity { omega, kappa },
        ..param
    })
}

/// Inverse mapping `T = Ω / ln(1 + 1/sinh² r)`. `r = 0` is the `T → 0`
/// limit and is rejected; callers that want the limit use [`temperature_or_zero`].
pub fn temperature_from_r(omega: f64, r: f64) -> Result<f64> {
    check_positive(omega, "mode frequency Ω")?;
    check_positive(r, "Hawking parameter r")?;
    let sinh = r.sinh();
    Ok(omega / (1.0 / (sinh * sinh)).ln_1p())
}

/// [`temperature_from_r`] extended by its limit `T(0) = 0`.
pub fn temperature_or_zero(omega: f64, r: f64) -> Result<f64> {
    if r == 0.0 {
        check_positive(omega, "mode frequency Ω")?;
        Ok(0.0)
    } else {
        temperature_from_r(omega, r)
    }
}

/// Two-mode squeezer coupling `B` and `B̄`: diagonal `cosh r`, cross entries
/// `±sinh r` in the `diag(1, -1)` pattern.
pub fn squeezer_symplectic(r: HawkingParam) -> SymplecticMatrix {
    SymplecticMatrix::two_mode_squeezer(2, 0, 1, r.value()).expect("valid two-mode indices")
}

/// Pure three-mode state on `(A, B, B̄)` after the channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeModeState {
    pub cm: CovarianceMatrix,
    pub params: ChannelParams,
}

/// `(I_A ⊕ S(r)) (σ_AB(s) ⊕ I_B̄) (I_A ⊕ S(r))ᵀ`.
pub fn dilate(params: ChannelParams) -> ThreeModeState {
    let input = direct_sum(&two_mode_squeezed(params.s), &vacuum(1).expect("one mode"));
    let channel = SymplecticMatrix::identity(1)
        .expect("one mode")
        .direct_sum(&squeezer_symplectic(params.r));
    let cm = apply_symplectic(&input, &channel).expect("three modes on both sides");
    ThreeModeState { cm, params }
}

/// Two-mode state from scalar blocks `a I₂`, `c Z₂`, `b I₂`.
pub(crate) fn two_mode_from_scalars(a: Dd, c: Dd, b: Dd) -> CovarianceMatrix {
    let mut m = DdMatrix::zeros(4, 4);
    m[(0, 0)] = a;
    m[(1, 1)] = a;
    m[(2, 2)] = b;
    m[(3, 3)] = b;
    m[(0, 2)] = c;
    m[(2, 0)] = c;
    m[(1, 3)] = -c;
    m[(3, 1)] = -c;
    CovarianceMatrix::from_dd(m).expect("symmetric by construction")
}

/// Alice–Bob state with `B̄` traced out.
pub fn reduced_ab(params: ChannelParams) -> CovarianceMatrix {
    let (c2, sh2) = Dd::from_f64(2.0 * params.s()).cosh_sinh();
    let (ch, sh) = Dd::from_f64(params.r()).cosh_sinh();
    two_mode_from_scalars(c2, ch * sh2, c2 * ch.square() + sh.square())
}

/// Bob–anti-Bob state with `A` traced out.
pub fn reduced_bbbar(params: ChannelParams) -> CovarianceMatrix {
    let (c2, _) = Dd::from_f64(2.0 * params.s()).cosh_sinh();
    let (cosh_s, _) = Dd::from_f64(params.s()).cosh_sinh();
    let (_, sinh_2r) = Dd::from_f64(2.0 * params.r()).cosh_sinh();
    let (ch, sh) = Dd::from_f64(params.r()).cosh_sinh();
    two_mode_from_scalars(
        c2 * ch.square() + sh.square(),
        cosh_s.square() * sinh_2r,
        ch.square() + c2 * sh.square(),
    )
}
