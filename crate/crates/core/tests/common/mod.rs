#![allow(dead_code)]

use gsteer_core::{apply_symplectic, vacuum, CovarianceMatrix, SymplecticMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of `depth` random gates on `n_modes` modes.
pub fn random_symplectic(rng: &mut impl Rng, n_modes: usize, depth: usize) -> SymplecticMatrix {
    let mut s = SymplecticMatrix::identity(n_modes).unwrap();
    for _ in 0..depth {
        let i = rng.random_range(0..n_modes);
        let gate = match (rng.random_range(0..4), n_modes > 1) {
            (0, _) => SymplecticMatrix::phase_rotation(n_modes, i, rng.random_range(0.0..6.3)),
            (1, _) => {
                SymplecticMatrix::single_mode_squeezer(n_modes, i, rng.random_range(-0.8..0.8))
            }
            (2, true) => {
                let j = (i + rng.random_range(1..n_modes)) % n_modes;
                SymplecticMatrix::beam_splitter(n_modes, i, j, rng.random_range(0.0..1.6))
            }
            (_, true) => {
                let j = (i + rng.random_range(1..n_modes)) % n_modes;
                SymplecticMatrix::two_mode_squeezer(n_modes, i, j, rng.random_range(0.0..1.0))
            }
            _ => SymplecticMatrix::phase_rotation(n_modes, i, rng.random_range(0.0..6.3)),
        };
        s = gate.unwrap().compose(&s).unwrap();
    }
    s
}

/// Thermal diagonal `⊕ ν_k I₂` with the given symplectic spectrum.
pub fn thermal(nus: &[f64]) -> CovarianceMatrix {
    let mut values = vec![0.0; 4 * nus.len() * nus.len()];
    let dim = 2 * nus.len();
    for (k, &nu) in nus.iter().enumerate() {
        values[(2 * k) * dim + 2 * k] = nu;
        values[(2 * k + 1) * dim + 2 * k + 1] = nu;
    }
    CovarianceMatrix::from_row_slice(nus.len(), &values).unwrap()
}

/// A random physical state together with its symplectic spectrum (sorted).
pub fn random_state(rng: &mut impl Rng, n_modes: usize) -> (CovarianceMatrix, Vec<f64>) {
    let mut nus: Vec<f64> = (0..n_modes)
        .map(|_| {
            if rng.random_bool(0.3) {
                1.0
            } else {
                rng.random_range(1.0..3.0)
            }
        })
        .collect();
    let sigma = apply_symplectic(&thermal(&nus), &random_symplectic(rng, n_modes, 6)).unwrap();
    nus.sort_by(f64::total_cmp);
    (sigma, nus)
}

pub fn random_pure(rng: &mut impl Rng, n_modes: usize) -> CovarianceMatrix {
    apply_symplectic(
        &vacuum(n_modes).unwrap(),
        &random_symplectic(rng, n_modes, 6),
    )
    .unwrap()
}
