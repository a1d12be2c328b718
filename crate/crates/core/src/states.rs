//! Builders for the Gaussian states used as channel inputs.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::channel::two_mode_from_scalars;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::symplectic::CovarianceMatrix;

/// Largest squeezing accepted anywhere; `cosh` stays far from overflow below it.
pub const MAX_SQUEEZING: f64 = 25.0;

pub(crate) fn check_squeezing(value: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::Domain(format!(
            "{what} must be a finite non-negative number, got {value}"
        )));
    }
    if value > MAX_SQUEEZING {
        return Err(Error::Range(format!(
            "{what} = {value} exceeds the overflow guard {MAX_SQUEEZING}"
        )));
    }
    Ok(value)
}

/// Squeezing `s` of the initial two-mode squeezed state.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct SqueezingParam(f64);

impl SqueezingParam {
    pub fn new(s: f64) -> Result<Self> {
        check_squeezing(s, "squeezing s").map(Self)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for SqueezingParam {
    type Error = Error;
    fn try_from(s: f64) -> Result<Self> {
        Self::new(s)
    }
}

impl From<SqueezingParam> for f64 {
    fn from(s: SqueezingParam) -> f64 {
        s.0
    }
}

/// Vacuum on `n_modes` modes: the identity.
pub fn vacuum(n_modes: usize) -> Result<CovarianceMatrix> {
    if n_modes == 0 {
        return Err(Error::InvalidDimension(
            "vacuum needs at least one mode".into(),
        ));
    }
    CovarianceMatrix::new(DMatrix::identity(2 * n_modes, 2 * n_modes))
}

/// Two-mode squeezed vacuum in `(x_A, p_A, x_B, p_B)` ordering.
///
/// Diagonal blocks are `cosh(2s) I₂`, the cross block is `sinh(2s) Z₂` with
/// `Z₂ = diag(1, -1)`. The state is pure for every `s`.
pub fn two_mode_squeezed(s: SqueezingParam) -> CovarianceMatrix {
    let (c, sh) = Dd::from_f64(2.0 * s.value()).cosh_sinh();
    two_mode_from_scalars(c, sh, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{
        check_bona_fide, partial_trace, renyi2_entropy, symplectic_eigenvalues,
    };
    use approx::assert_relative_eq;

    // cosh 2 and sinh 2 to 40 digits
    const COSH_2: f64 = 3.762195691083631459562213477773746108294;
    const SINH_2: f64 = 3.626860407847018767668213982801261704886;

    #[test]
    fn squeezing_guards() {
        assert!(SqueezingParam::new(-0.1).is_err());
        assert!(SqueezingParam::new(f64::NAN).is_err());
        assert!(matches!(SqueezingParam::new(25.5), Err(Error::Range(_))));
        assert_eq!(SqueezingParam::new(25.0).unwrap().value(), 25.0);
    }

    #[test]
    fn vacuum_is_identity() {
        assert_eq!(vacuum(1).unwrap().matrix(), &DMatrix::identity(2, 2));
        let v3 = vacuum(3).unwrap();
        assert_eq!(v3.det(), 1.0);
        assert_eq!(renyi2_entropy(&v3).unwrap(), 0.0);
        assert!(vacuum(0).is_err());
    }

    #[test]
    fn tmsv_zero_is_vacuum() {
        assert_eq!(
            two_mode_squeezed(SqueezingParam::new(0.0).unwrap()),
            vacuum(2).unwrap()
        );
    }

    #[test]
    fn tmsv_at_one() {
        let sigma = two_mode_squeezed(SqueezingParam::new(1.0).unwrap());
        let m = sigma.matrix();
        for k in 0..4 {
            assert_relative_eq!(m[(k, k)], COSH_2, max_relative = 1e-15);
        }
        assert_relative_eq!(m[(0, 2)], SINH_2, max_relative = 1e-15);
        assert_relative_eq!(m[(1, 3)], -SINH_2, max_relative = 1e-15);
        // cosh² - sinh² = 1 on both quadratures
        assert_relative_eq!(sigma.det(), 1.0, epsilon = 1e-12);
        for nu in symplectic_eigenvalues(&sigma).unwrap() {
            assert_relative_eq!(nu, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn tmsv_grid_is_pure_and_physical() {
        for k in 0..=50 {
            let s = SqueezingParam::new(0.1 * k as f64).unwrap();
            let sigma = two_mode_squeezed(s);
            assert!(check_bona_fide(&sigma).physical, "s = {}", s.value());
            assert!((sigma.det() - 1.0).abs() < 1e-20, "s = {}", s.value());
            let c = (2.0 * s.value()).cosh();
            for keep in [[0usize], [1]] {
                let reduced = partial_trace(&sigma, &keep).unwrap();
                assert_eq!(
                    reduced.entries(),
                    &sigma.entries().select(
                        &[2 * keep[0], 2 * keep[0] + 1],
                        &[2 * keep[0], 2 * keep[0] + 1]
                    )
                );
                assert_relative_eq!(reduced.matrix()[(0, 0)], c, max_relative = 1e-15);
                assert_eq!(reduced.matrix()[(0, 1)], 0.0);
            }
        }
    }
}
