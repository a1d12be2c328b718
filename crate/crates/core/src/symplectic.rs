//! Covariance-matrix calculus for zero-mean Gaussian states.
//!
//! Quadratures are ordered mode by mode, `(x_0, p_0, x_1, p_1, ...)`, and the
//! vacuum covariance matrix is the identity. Every function here is a pure
//! function of immutable values.
//!
//! Entries are held in double-double precision (see [`crate::dd`]); the `f64`
//! view returned by [`CovarianceMatrix::matrix`] is the rounded copy.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::dd::{Dd, DdMatrix};
use crate::error::{Error, Result};

/// Relative asymmetry accepted (and symmetrized away) on construction.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Slack on the minimum eigenvalue of `σ + iΩ` for a state to count as physical.
pub const PHYSICALITY_TOL: f64 = 1e-10;
/// Entrywise slack on `S Ω Sᵀ = Ω`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Relative tolerance used to pair the doubly degenerate eigenvalues.
const PAIRING_TOL: f64 = 1e-8;
/// Steering blocks worse conditioned than this are treated as singular.
const MAX_CONDITION: f64 = 1e12;

/// The symplectic form `⊕ [[0, 1], [-1, 0]]` on `n_modes` modes.
pub fn symplectic_form(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes == 0 {
        return Err(Error::InvalidDimension(
            "symplectic form needs at least one mode".into(),
        ));
    }
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(omega)
}

fn check_square_even(rows: usize, cols: usize, what: &str) -> Result<usize> {
    if rows != cols || rows == 0 || !rows.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "{what} must be 2n x 2n with n >= 1, got {rows} x {cols}"
        )));
    }
    Ok(rows / 2)
}

/// Second-moment matrix of an `n`-mode Gaussian state.
///
/// Always square with side `2 n_modes` and exactly symmetric. Construction
/// does not imply physicality; use [`check_bona_fide`] for that.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct CovarianceMatrix {
    n_modes: usize,
    entries: DdMatrix,
    rounded: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates shape and symmetry. Asymmetry up to [`SYMMETRY_TOL`] relative
    /// to the largest entry is averaged out, anything larger is rejected.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        Self::from_dd(DdMatrix::from_f64(&entries))
    }

    /// Same checks as [`CovarianceMatrix::new`] on extended-precision entries.
    pub fn from_dd(entries: DdMatrix) -> Result<Self> {
        let n_modes = check_square_even(entries.nrows(), entries.ncols(), "covariance matrix")?;
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::ContractViolation(
                "covariance matrix has non-finite entries".into(),
            ));
        }
        let scale = entries.max_abs();
        let asym = (&entries - &entries.transpose()).max_abs();
        if asym > SYMMETRY_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::ContractViolation(format!(
                "covariance matrix is not symmetric (max |σ - σᵀ| = {asym:e}, scale {scale:e})"
            )));
        }
        let entries = entries.symmetrized();
        let rounded = entries.to_f64();
        Ok(Self {
            n_modes,
            entries,
            rounded,
        })
    }

    /// Builds from `(2n)²` row-major values.
    pub fn from_row_slice(n_modes: usize, values: &[f64]) -> Result<Self> {
        let dim = 2 * n_modes;
        if n_modes == 0 || values.len() != dim * dim {
            return Err(Error::InvalidDimension(format!(
                "expected {} entries for {n_modes} modes, got {}",
                dim * dim,
                values.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(dim, dim, values))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }

    /// Entries rounded to `f64`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.rounded
    }

    pub fn entries(&self) -> &DdMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.rounded
    }

    pub fn det(&self) -> f64 {
        self.entries.det().to_f64()
    }

    pub fn det_dd(&self) -> Dd {
        self.entries.det()
    }

    /// The 2x2 block coupling mode `i` (rows) to mode `j` (columns).
    pub fn mode_block(&self, i: usize, j: usize) -> DMatrix<f64> {
        self.rounded.view((2 * i, 2 * j), (2, 2)).into_owned()
    }

    /// `σ + ε I`, i.e. the state after adding isotropic classical noise.
    pub fn add_noise(&self, epsilon: f64) -> Result<Self> {
        let noise = DdMatrix::identity(self.dim()).scale(Dd::from_f64(epsilon));
        Self::from_dd(&self.entries + &noise)
    }

    /// Row-major nested vectors, the layout used for JSON dumps.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rounded
            .row_iter()
            .map(|row| row.iter().copied().collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for CovarianceMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidDimension("ragged covariance rows".into()));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        Self::new(DMatrix::from_row_slice(dim, dim, &flat))
    }
}

impl From<CovarianceMatrix> for Vec<Vec<f64>> {
    fn from(cm: CovarianceMatrix) -> Self {
        cm.to_rows()
    }
}

fn omega_dd(n_modes: usize) -> DdMatrix {
    DdMatrix::from_fn(2 * n_modes, 2 * n_modes, |i, j| {
        if i / 2 != j / 2 {
            Dd::ZERO
        } else if i + 1 == j && i % 2 == 0 {
            Dd::ONE
        } else if j + 1 == i && j % 2 == 0 {
            -Dd::ONE
        } else {
            Dd::ZERO
        }
    })
}

/// A real `2n x 2n` matrix preserving the symplectic form, `S Ω Sᵀ = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    n_modes: usize,
    entries: DdMatrix,
}

impl SymplecticMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        Self::from_dd(DdMatrix::from_f64(&entries))
    }

    pub fn from_dd(entries: DdMatrix) -> Result<Self> {
        let n_modes = check_square_even(entries.nrows(), entries.ncols(), "symplectic matrix")?;
        let omega = omega_dd(n_modes);
        let defect = (&(&(&entries * &omega) * &entries.transpose()) - &omega).max_abs();
        if !(defect <= SYMPLECTIC_TOL) {
            return Err(Error::ContractViolation(format!(
                "matrix is not symplectic (max |SΩSᵀ - Ω| = {defect:e})"
            )));
        }
        Ok(Self { n_modes, entries })
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidDimension(
                "symplectic identity needs at least one mode".into(),
            ));
        }
        Ok(Self {
            n_modes,
            entries: DdMatrix::identity(2 * n_modes),
        })
    }

    /// Single-mode squeezer on `mode`: `x → e^{-r} x`, `p → e^{r} p`.
    pub fn single_mode_squeezer(n_modes: usize, mode: usize, r: f64) -> Result<Self> {
        let mut s = Self::identity(n_modes)?;
        check_mode(mode, n_modes)?;
        let e = Dd::from_f64(r).exp();
        s.entries[(2 * mode, 2 * mode)] = e.recip();
        s.entries[(2 * mode + 1, 2 * mode + 1)] = e;
        Ok(s)
    }

    /// Phase-space rotation by `theta` on `mode`.
    pub fn phase_rotation(n_modes: usize, mode: usize, theta: f64) -> Result<Self> {
        let mut s = Self::identity(n_modes)?;
        check_mode(mode, n_modes)?;
        let (sin, cos) = theta.sin_cos();
        let (sin, cos) = (Dd::from_f64(sin), Dd::from_f64(cos));
        let k = 2 * mode;
        s.entries[(k, k)] = cos;
        s.entries[(k, k + 1)] = sin;
        s.entries[(k + 1, k)] = -sin;
        s.entries[(k + 1, k + 1)] = cos;
        Ok(s)
    }

    /// Beam splitter with mixing angle `theta` between modes `i` and `j`.
    pub fn beam_splitter(n_modes: usize, i: usize, j: usize, theta: f64) -> Result<Self> {
        let mut s = Self::identity(n_modes)?;
        check_pair(i, j, n_modes)?;
        let (sin, cos) = theta.sin_cos();
        let (sin, cos) = (Dd::from_f64(sin), Dd::from_f64(cos));
        for q in 0..2 {
            let (a, b) = (2 * i + q, 2 * j + q);
            s.entries[(a, a)] = cos;
            s.entries[(a, b)] = sin;
            s.entries[(b, a)] = -sin;
            s.entries[(b, b)] = cos;
        }
        Ok(s)
    }

    /// Two-mode squeezer between modes `i` and `j`: diagonal `cosh r`, cross
    /// blocks `sinh r · diag(1, -1)`.
    pub fn two_mode_squeezer(n_modes: usize, i: usize, j: usize, r: f64) -> Result<Self> {
        let mut s = Self::identity(n_modes)?;
        check_pair(i, j, n_modes)?;
        let (ch, sh) = Dd::from_f64(r).cosh_sinh();
        for (q, sign) in [(0, sh), (1, -sh)] {
            let (a, b) = (2 * i + q, 2 * j + q);
            s.entries[(a, a)] = ch;
            s.entries[(b, b)] = ch;
            s.entries[(a, b)] = sign;
            s.entries[(b, a)] = sign;
        }
        Ok(s)
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Entries rounded to `f64`.
    pub fn matrix(&self) -> DMatrix<f64> {
        self.entries.to_f64()
    }

    pub fn entries(&self) -> &DdMatrix {
        &self.entries
    }

    /// `self · other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<Self> {
        if self.n_modes != other.n_modes {
            return Err(Error::ContractViolation(format!(
                "cannot compose symplectics on {} and {} modes",
                self.n_modes, other.n_modes
            )));
        }
        Ok(Self {
            n_modes: self.n_modes,
            entries: &self.entries * &other.entries,
        })
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &SymplecticMatrix) -> Self {
        Self {
            n_modes: self.n_modes + other.n_modes,
            entries: self.entries.block_diag(&other.entries),
        }
    }
}

fn check_mode(mode: usize, n_modes: usize) -> Result<()> {
    if mode >= n_modes {
        return Err(Error::ContractViolation(format!(
            "mode index {mode} out of range for {n_modes} modes"
        )));
    }
    Ok(())
}

fn check_pair(i: usize, j: usize, n_modes: usize) -> Result<()> {
    check_mode(i, n_modes)?;
    check_mode(j, n_modes)?;
    if i == j {
        return Err(Error::ContractViolation(format!(
            "two-mode operation needs distinct modes, got {i} twice"
        )));
    }
    Ok(())
}

/// Ordered split of mode indices into a steering party and a steered party.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModePartition {
    steering: Vec<usize>,
    steered: Vec<usize>,
}

impl ModePartition {
    pub fn new(steering: Vec<usize>, steered: Vec<usize>) -> Result<Self> {
        check_index_list(&steering, "steering")?;
        check_index_list(&steered, "steered")?;
        if let Some(m) = steering.iter().find(|m| steered.contains(m)) {
            return Err(Error::ContractViolation(format!(
                "mode {m} appears in both parties"
            )));
        }
        Ok(Self { steering, steered })
    }

    /// Mode `steering` steers mode `steered`.
    pub fn single(steering: usize, steered: usize) -> Result<Self> {
        Self::new(vec![steering], vec![steered])
    }

    pub fn steering(&self) -> &[usize] {
        &self.steering
    }

    pub fn steered(&self) -> &[usize] {
        &self.steered
    }

    /// Same bipartition with the roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            steering: self.steered.clone(),
            steered: self.steering.clone(),
        }
    }

    pub fn validate_for(&self, n_modes: usize) -> Result<()> {
        let max = self.steering.iter().chain(&self.steered).max().copied();
        match max {
            Some(m) if m >= n_modes => Err(Error::ContractViolation(format!(
                "partition references mode {m} but the state has {n_modes} modes"
            ))),
            _ => Ok(()),
        }
    }
}

fn check_index_list(modes: &[usize], what: &str) -> Result<()> {
    if modes.is_empty() {
        return Err(Error::ContractViolation(format!("{what} party is empty")));
    }
    if modes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::ContractViolation(format!(
            "{what} indices must be strictly increasing, got {modes:?}"
        )));
    }
    Ok(())
}

/// Outcome of the uncertainty-principle test `σ + iΩ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BonaFide {
    pub physical: bool,
    /// Smallest eigenvalue of the Hermitian matrix `σ + iΩ`.
    pub min_eigenvalue: f64,
}

pub fn check_bona_fide(sigma: &CovarianceMatrix) -> BonaFide {
    let omega = symplectic_form(sigma.n_modes()).expect("n_modes >= 1 by construction");
    let min_eigenvalue = min_hermitian_eigenvalue(sigma.matrix(), &omega);
    BonaFide {
        physical: min_eigenvalue >= -PHYSICALITY_TOL,
        min_eigenvalue,
    }
}

/// Smallest eigenvalue of the Hermitian matrix `re + i·im` (`im` antisymmetric).
pub(crate) fn min_hermitian_eigenvalue(re: &DMatrix<f64>, im: &DMatrix<f64>) -> f64 {
    let h = DMatrix::from_fn(re.nrows(), re.ncols(), |i, j| {
        Complex::new(re[(i, j)], im[(i, j)])
    });
    SymmetricEigen::new(h).eigenvalues.min()
}

/// Symplectic spectrum `ν_1 ≤ ... ≤ ν_n` of a positive-definite `σ`.
///
/// With `σ = L Lᵀ`, the symmetric matrix `Lᵀ Ωᵀ σ Ω L` is similar to
/// `-(Ωσ)²` and so has every `ν_k²` twice. Its eigenvalues come from Jacobi
/// rotations in double-double precision; each degenerate pair is collapsed to
/// one value.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<Vec<f64>> {
    let l = sigma.entries().cholesky().map_err(|_| {
        let lowest = SymmetricEigen::new(sigma.matrix().clone())
            .eigenvalues
            .min();
        Error::Domain(format!(
            "covariance matrix is not positive definite (eigenvalue {lowest:e})"
        ))
    })?;
    let omega = omega_dd(sigma.n_modes());
    let omega_l = &omega * &l;
    let k = &(&omega_l.transpose() * sigma.entries()) * &omega_l;
    let squares = k.symmetric_eigenvalues();
    squares
        .chunks_exact(2)
        .map(|pair| {
            let (a, b) = (pair[0].to_f64(), pair[1].to_f64());
            if !(a > 0.0 && b.is_finite()) {
                Err(Error::Domain(format!(
                    "symplectic spectrum is not positive and finite: {a}, {b}"
                )))
            } else if (a - b).abs() > PAIRING_TOL * b.max(1.0) {
                Err(Error::Domain(format!(
                    "symplectic spectrum does not pair up: {a} vs {b}"
                )))
            } else {
                Ok(((pair[0] + pair[1]) * 0.5).sqrt().to_f64())
            }
        })
        .collect()
}

fn mode_indices(modes: &[usize]) -> Vec<usize> {
    modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect()
}

fn select(m: &DdMatrix, rows: &[usize], cols: &[usize]) -> DdMatrix {
    m.select(&mode_indices(rows), &mode_indices(cols))
}

/// Reduced state on the modes in `keep` (principal submatrix, order kept).
pub fn partial_trace(sigma: &CovarianceMatrix, keep: &[usize]) -> Result<CovarianceMatrix> {
    check_index_list(keep, "kept")?;
    if let Some(&m) = keep.last() {
        check_mode(m, sigma.n_modes())?;
    }
    CovarianceMatrix::from_dd(select(sigma.entries(), keep, keep))
}

/// Restriction of `σ` to the modes of `partition`, reordered so that the
/// steering modes come first.
pub fn restrict_to_partition(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<CovarianceMatrix> {
    partition.validate_for(sigma.n_modes())?;
    let order: Vec<usize> = partition
        .steering()
        .iter()
        .chain(partition.steered())
        .copied()
        .collect();
    CovarianceMatrix::from_dd(select(sigma.entries(), &order, &order))
}

/// `M = B - Cᵀ A⁻¹ C` for the block form `[[A, C], [Cᵀ, B]]` with `A` the
/// steering party.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurComplement {
    pub matrix: CovarianceMatrix,
    /// 2-norm condition number of the steering block.
    pub steering_condition: f64,
    pub steering_det: f64,
}

pub fn schur_complement(
    sigma: &CovarianceMatrix,
    partition: &ModePartition,
) -> Result<SchurComplement> {
    partition.validate_for(sigma.n_modes())?;
    let m = sigma.entries();
    let a = select(m, partition.steering(), partition.steering());
    let b = select(m, partition.steered(), partition.steered());
    let c = select(m, partition.steering(), partition.steered());

    let singular = a.to_f64().singular_values();
    let condition = singular.max() / singular.min();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::Singular { condition });
    }

    let steering_det;
    let a_inv = if partition.steering().len() == 1 {
        let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
        steering_det = det;
        let inv_det = det.recip();
        DdMatrix::from_fn(2, 2, |i, j| {
            let v = if i == j {
                a[(1 - i, 1 - j)]
            } else {
                -a[(i, j)]
            };
            v * inv_det
        })
    } else {
        steering_det = a.det();
        a.inverse().ok_or(Error::Singular { condition })?
    };

    let schur = &b - &(&(&c.transpose() * &a_inv) * &c);
    Ok(SchurComplement {
        matrix: CovarianceMatrix::from_dd(schur.symmetrized())?,
        steering_condition: condition,
        steering_det: steering_det.to_f64(),
    })
}

/// Rényi-2 entropy `½ ln det σ`.
pub fn renyi2_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    let det = sigma.det_dd();
    if !(det.to_f64() >= 1.0 - PHYSICALITY_TOL) {
        return Err(Error::Domain(format!(
            "det σ = {det} < 1: not a physical state"
        )));
    }
    Ok(0.5 * det.ln())
}

/// Congruence `S σ Sᵀ`.
pub fn apply_symplectic(
    sigma: &CovarianceMatrix,
    s: &SymplecticMatrix,
) -> Result<CovarianceMatrix> {
    if sigma.n_modes() != s.n_modes() {
        return Err(Error::ContractViolation(format!(
            "state has {} modes but symplectic acts on {}",
            sigma.n_modes(),
            s.n_modes()
        )));
    }
    let out = &(s.entries() * sigma.entries()) * &s.entries().transpose();
    CovarianceMatrix::from_dd(out.symmetrized())
}

/// Block-diagonal `σ₁ ⊕ σ₂`.
pub fn direct_sum(first: &CovarianceMatrix, second: &CovarianceMatrix) -> CovarianceMatrix {
    CovarianceMatrix::from_dd(first.entries().block_diag(second.entries()))
        .expect("block sum of valid covariance matrices")
}
