//! Small dense complex matrices for materializing operators at test scale.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{DfntError, Result};
use crate::vector::ComplexVector;

/// Default cap on the number of entries a materialized operator may hold (2²⁶).
pub const DEFAULT_DENSE_CAP: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<Complex64>);

impl DenseMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// `L^k` for the `n × n` down-shift matrix `L` (first column `[0, 1, 0, …]`).
    pub fn downshift_power(n: usize, k: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::from_fn(n, n, |m, c| if (c + k) % n == m { one } else { zero })
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn column(&self, col: usize) -> ComplexVector {
        ComplexVector::from_vec_unchecked(self.0.column(col).iter().copied().collect())
    }

    /// Entries in row-major order as `(row, col, value)`.
    pub fn iter_row_major(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.rows()).flat_map(move |m| (0..self.cols()).map(move |n| (m, n, self.0[(m, n)])))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(DfntError::LengthMismatch {
                expected: self.cols(),
                actual: rhs.rows(),
            });
        }
        Ok(Self(&self.0 * &rhs.0))
    }

    pub fn mul_vec(&self, x: &ComplexVector) -> Result<ComplexVector> {
        x.check_len(self.cols())?;
        let v = nalgebra::DVector::from_column_slice(x.as_slice());
        Ok(ComplexVector::from_vec_unchecked((&self.0 * v).iter().copied().collect()))
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if self.rows() != self.cols() {
            return Err(DfntError::LengthMismatch {
                expected: self.rows(),
                actual: self.cols(),
            });
        }
        Ok(self.0.clone().lu().determinant())
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(DfntError::LengthMismatch {
                expected: self.rows() * self.cols(),
                actual: other.rows() * other.cols(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
