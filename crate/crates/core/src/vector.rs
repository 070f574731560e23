use std::ops::Index;

use num_complex::Complex64;

use crate::error::{DfntError, Result};

/// A non-empty sequence of finite complex samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(DfntError::InvalidSize(0));
        }
        if let Some(pos) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(DfntError::NonFinite(pos));
        }
        Ok(Self(values))
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    /// Unit impulse at `index`.
    pub fn delta(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(DfntError::IndexOutOfRange { index, size: len });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        v[index] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn from_parts(re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(DfntError::LengthMismatch {
                expected: re.len(),
                actual: im.len(),
            });
        }
        Self::new(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
    }

    // Internal constructor for values produced by finite arithmetic.
    pub(crate) fn from_vec_unchecked(values: Vec<Complex64>) -> Self {
        debug_assert!(!values.is_empty());
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.0
    }

    /// Σ|x_n|².
    pub fn energy(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest componentwise distance `max_n |self_n - other_n|`.
    pub fn max_abs_diff(&self, other: &ComplexVector) -> Result<f64> {
        self.check_len(other.len())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(DfntError::LengthMismatch {
                expected,
                actual: self.len(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;

    fn index(&self, index: usize) -> &Complex64 {
        &self.0[index]
    }
}

impl TryFrom<Vec<Complex64>> for ComplexVector {
    type Error = DfntError;

    fn try_from(values: Vec<Complex64>) -> Result<Self> {
        Self::new(values)
    }
}

impl AsRef<[Complex64]> for ComplexVector {
    fn as_ref(&self) -> &[Complex64] {
        &self.0
    }
}
