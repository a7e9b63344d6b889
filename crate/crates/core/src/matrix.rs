//! Dense real matrices and scale-relative tolerances.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense real matrix with finite entries.
///
/// Every constructor rejects NaN and infinities, so downstream operations can
/// assume finite input. Elements are exposed in row-major order.
#[derive(Clone, PartialEq)]
pub struct MatrixValue(DMatrix<f64>);

impl MatrixValue {
    /// Builds a matrix from row-major elements.
    pub fn new(rows: usize, cols: usize, elements: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if elements.len() != rows * cols {
            return Err(Error::ElementCount {
                rows,
                cols,
                found: elements.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &elements))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n_cols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {n_cols}",
                rows[bad].len()
            )));
        }
        Self::new(n_rows, n_cols, rows.concat())
    }

    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::Dimension(format!(
                "empty shape {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                if !m[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::from_dmatrix(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    /// Block-diagonal direct sum of square matrices.
    pub fn direct_sum(parts: &[&MatrixValue]) -> Self {
        let n: usize = parts.iter().map(|p| p.rows()).sum();
        let m: usize = parts.iter().map(|p| p.cols()).sum();
        let mut out = DMatrix::zeros(n, m);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.view_mut((r, c), (p.rows(), p.cols())).copy_from(&p.0);
            r += p.rows();
            c += p.cols();
        }
        Self(out)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    pub fn elements(&self) -> Vec<f64> {
        self.0.transpose().as_slice().to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| self.0.row(i).iter().copied().collect())
            .collect()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// Largest absolute element; the scale used by [`Tolerance`].
    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &MatrixValue) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "shape mismatch");
        (&self.0 - &other.0).amax()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(&self.0 * factor)
    }

    /// `(M + Mᵀ)/2`.
    pub fn symmetrized(&self) -> Self {
        Self((&self.0 + self.0.transpose()) * 0.5)
    }

    /// `(M - Mᵀ)/2`.
    pub fn antisymmetrized(&self) -> Self {
        Self((&self.0 - self.0.transpose()) * 0.5)
    }

    pub fn symmetry_deviation(&self) -> f64 {
        (&self.0 - self.0.transpose()).amax()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(self.rows())
    }

    pub fn require_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows() != rows || self.cols() != cols {
            return Err(Error::Dimension(format!(
                "expected {rows}x{cols}, got {}x{}",
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    /// Square with even dimension; returns the number of modes.
    pub fn require_even_square(&self) -> Result<usize> {
        let n = self.require_square()?;
        if n % 2 != 0 {
            return Err(Error::Dimension(format!("odd dimension {n}")));
        }
        Ok(n / 2)
    }

    pub fn require_symmetric(&self, tol: &Tolerance) -> Result<()> {
        self.require_square()?;
        let deviation = self.symmetry_deviation();
        let threshold = tol.threshold(self.max_abs());
        if deviation > threshold {
            return Err(Error::NotSymmetric {
                deviation,
                threshold,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixValue{:?}", self.to_rows())
    }
}

impl fmt::Display for MatrixValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| format!("{:>12.6}", self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &MatrixValue {
    type Output = MatrixValue;

    fn mul(self, rhs: &MatrixValue) -> MatrixValue {
        MatrixValue(&self.0 * &rhs.0)
    }
}

impl Add for &MatrixValue {
    type Output = MatrixValue;

    fn add(self, rhs: &MatrixValue) -> MatrixValue {
        MatrixValue(&self.0 + &rhs.0)
    }
}

impl Sub for &MatrixValue {
    type Output = MatrixValue;

    fn sub(self, rhs: &MatrixValue) -> MatrixValue {
        MatrixValue(&self.0 - &rhs.0)
    }
}

impl Neg for &MatrixValue {
    type Output = MatrixValue;

    fn neg(self) -> MatrixValue {
        MatrixValue(-&self.0)
    }
}

/// Absolute-plus-relative tolerance. The effective threshold for an operand
/// of scale `s` is `abs + rel * s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel >= 0.0 && rel.is_finite()) || !(abs >= 0.0 && abs.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must be finite and nonnegative (rel={rel}, abs={abs})"
            )));
        }
        Ok(Self { rel, abs })
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    /// Same tolerance with both components multiplied by `factor`.
    pub fn widened(&self, factor: f64) -> Self {
        Self {
            rel: self.rel * factor,
            abs: self.abs * factor,
        }
    }
}

/// Eigen-decomposition of a real symmetric matrix with ascending eigenvalues.
pub(crate) fn sym_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigen-decomposition of a Hermitian matrix with ascending (real) eigenvalues.
pub(crate) fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(m.clone());
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// `f(M)` for symmetric `M`, applied through its eigenvalues.
pub(crate) fn sym_function(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let (vals, vecs) = sym_eigen(m);
    let scaled = DMatrix::from_diagonal(&vals.map(f));
    let out = &vecs * scaled * vecs.transpose();
    (&out + out.transpose()) * 0.5
}

pub(crate) fn min_sym_eigenvalue(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.min()
}
