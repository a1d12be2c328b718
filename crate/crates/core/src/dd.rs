//! Double-double arithmetic and the small dense linear algebra built on it.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi) / 2`, good
//! for roughly 32 significant digits. Covariance matrices of strongly squeezed
//! states have entries in the thousands while their symplectic invariants sit
//! near 1, so storing them in `f64` alone loses the digits those invariants
//! are made of.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

// ln 2 split across two doubles
const LN2: Dd = Dd {
    hi: std::f64::consts::LN_2,
    lo: 2.3190468138462996e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Builds from two parts that need not be normalized.
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest `f64`.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    /// Exact multiplication by `2^k`.
    fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Square root by one Newton step from the `f64` estimate. Negative
    /// inputs give NaN.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let y = Dd::from_f64(self.hi.sqrt());
        y + (self - y.square()) / (y + y)
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        const HALVINGS: i32 = 8;
        let k = (self.hi / LN2.hi).round();
        let t = (self - LN2 * k).ldexp(-HALVINGS);
        // |t| < 1.4e-3, so 14 terms are far past dd precision. Squaring is
        // carried out on e^t - 1 so relative error does not grow with it.
        let mut term = t;
        let mut m = t;
        for n in 2..=14 {
            term = term * t / n as f64;
            m += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..HALVINGS {
            m = m * (m + 2.0);
        }
        let sum = m + Dd::ONE;
        sum.ldexp(k as i32)
    }

    /// `(cosh x, sinh x)`, both to full double-double precision.
    pub fn cosh_sinh(self) -> (Self, Self) {
        let e = self.exp();
        let inv = e.recip();
        let cosh = (e + inv).ldexp(-1);
        let sinh = if self.hi.abs() < 0.5 {
            // the difference e - 1/e cancels for small x; sum the series
            let x2 = self.square();
            let mut term = self;
            let mut sum = self;
            for n in 1..=20 {
                term = term * x2 / ((2 * n) * (2 * n + 1)) as f64;
                sum += term;
                if term.hi.abs() < 1e-36 * sum.hi.abs() {
                    break;
                }
            }
            sum
        } else {
            (e - inv).ldexp(-1)
        };
        (cosh, sinh)
    }

    /// Natural log, rounded to `f64`. The correction term keeps it accurate
    /// to `f64` precision even when `lo` matters.
    pub fn ln(self) -> f64 {
        self.hi.ln() + self.lo / self.hi
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        self + Dd::from_f64(b)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from_f64(q3)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}

/// Dense row-major matrix of [`Dd`].
#[derive(Debug, Clone, PartialEq)]
pub struct DdMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Dd::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Dd::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Dd) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_f64(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| Dd::from_f64(m[(i, j)]))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn iter(&self) -> impl Iterator<Item = &Dd> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: Dd) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * k)
    }

    /// Largest entry magnitude, rounded.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0, |acc, v| acc.max(v.to_f64().abs()))
    }

    /// Entries at the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn block_diag(&self, other: &DdMatrix) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(r + other.rows, c + other.cols, |i, j| {
            match (i < r, j < c) {
                (true, true) => self[(i, j)],
                (false, false) => other[(i - r, j - c)],
                _ => Dd::ZERO,
            }
        })
    }

    /// `(self + selfᵀ) / 2`.
    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)]) * 0.5
        })
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Dd {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Dd::ONE;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| {
                    a[(x, k)]
                        .abs()
                        .partial_cmp(&a[(y, k)].abs())
                        .unwrap_or(Ordering::Equal)
                })
                .unwrap_or(k);
            if a[(p, k)].hi == 0.0 {
                return Dd::ZERO;
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)];
            det = det * pivot;
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                for j in k + 1..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination, `None` if a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| {
                    a[(x, k)]
                        .abs()
                        .partial_cmp(&a[(y, k)].abs())
                        .unwrap_or(Ordering::Equal)
                })
                .unwrap_or(k);
            if a[(p, k)].hi == 0.0 {
                return None;
            }
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = a[(k, k)].recip();
            for j in 0..n {
                a[(k, j)] = a[(k, j)] * pivot;
                inv[(k, j)] = inv[(k, j)] * pivot;
            }
            for i in (0..n).filter(|&i| i != k) {
                let f = a[(i, k)];
                if f.hi == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let (akj, ikj) = (a[(k, j)], inv[(k, j)]);
                    a[(i, j)] -= f * akj;
                    inv[(i, j)] -= f * ikj;
                }
            }
        }
        Some(inv)
    }

    /// Lower-triangular `L` with `self = L Lᵀ`. On failure returns the index
    /// of the first non-positive pivot.
    pub fn cholesky(&self) -> std::result::Result<Self, usize> {
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d -= l[(j, k)].square();
            }
            if !(d.hi > 0.0) {
                return Err(j);
            }
            let djj = d.sqrt();
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut v = self[(i, j)];
                for k in 0..j {
                    v -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = v / djj;
            }
        }
        Ok(l)
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
    /// ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<Dd> {
        let n = self.rows;
        let mut a = self.symmetrized();
        let scale: Dd = a.data.iter().fold(Dd::ZERO, |acc, &v| acc + v.square());
        for _sweep in 0..64 {
            let mut off = Dd::ZERO;
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].square();
                }
            }
            if off.hi <= 1e-66 * scale.hi {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.hi == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (apq * 2.0);
                    // for huge theta, tan φ ≈ 1/(2θ); squaring it would overflow
                    let t = if theta.hi.abs() > 1e100 {
                        (theta.abs() * 2.0).recip()
                    } else {
                        (theta.abs() + (theta.square() + Dd::ONE).sqrt()).recip()
                    };
                    let t = if theta.hi < 0.0 { -t } else { t };
                    let c = (t.square() + Dd::ONE).sqrt().recip();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[(k, p)], a[(k, q)]);
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                    a[(p, q)] = Dd::ZERO;
                    a[(q, p)] = Dd::ZERO;
                }
            }
        }
        let mut eig: Vec<Dd> = (0..n).map(|k| a[(k, k)]).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
        eig
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for DdMatrix {
    type Output = Dd;
    fn index(&self, (i, j): (usize, usize)) -> &Dd {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DdMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Dd {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &DdMatrix {
    type Output = DdMatrix;
    fn mul(self, b: &DdMatrix) -> DdMatrix {
        assert_eq!(self.cols, b.rows, "matrix product shape mismatch");
        DdMatrix::from_fn(self.rows, b.cols, |i, j| {
            (0..self.cols).fold(Dd::ZERO, |acc, k| acc + self[(i, k)] * b[(k, j)])
        })
    }
}

impl Add for &DdMatrix {
    type Output = DdMatrix;
    fn add(self, b: &DdMatrix) -> DdMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (b.rows, b.cols),
            "matrix sum shape mismatch"
        );
        DdMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + b[(i, j)])
    }
}

impl Sub for &DdMatrix {
    type Output = DdMatrix;
    fn sub(self, b: &DdMatrix) -> DdMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (b.rows, b.cols),
            "matrix difference shape mismatch"
        );
        DdMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - b[(i, j)])
    }
}
