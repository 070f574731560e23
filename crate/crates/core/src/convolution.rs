//! Circulant operators and the DFnT convolution theorem.
//!
//! A circulant `Z` with first column `z` satisfies `Z(m, n) = z((m - n) mod N)`
//! and `Z = Σ_k z(k) L^k` where `L` is the down-shift. Multiplying by `Z` is
//! circular convolution with `z`.

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{DfntError, Result};
use crate::fft::Dft;
use crate::operator::{DfntOperator, Variant};
use crate::vector::ComplexVector;

/// Size cap for the `O(N³)` dense triple products.
pub const DENSE_PRODUCT_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct CirculantOperator {
    first_column: ComplexVector,
}

impl CirculantOperator {
    pub fn new(first_column: ComplexVector) -> Self {
        Self { first_column }
    }

    pub fn identity(n: usize) -> Result<Self> {
        ComplexVector::delta(n, 0).map(Self::new)
    }

    /// `L^k`, the down-shift by `k` places (`k` taken mod `n`).
    pub fn downshift(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(DfntError::InvalidSize(0));
        }
        ComplexVector::delta(n, k % n).map(Self::new)
    }

    pub fn size(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &ComplexVector {
        &self.first_column
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        let size = self.size();
        self.first_column[(m + size - n % size) % size]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.size();
        DenseMatrix::from_fn(n, n, |r, c| self.entry(r, c))
    }

    pub fn apply(&self, x: &ComplexVector) -> Result<ComplexVector> {
        circular_convolve(&self.first_column, x)
    }
}

/// `r(n) = Σ_k h(k)·s((n - k) mod N)`, computed through the DFT.
pub fn circular_convolve(h: &ComplexVector, s: &ComplexVector) -> Result<ComplexVector> {
    s.check_len(h.len())?;
    let dft = Dft::new(h.len());
    let mut hh = h.as_slice().to_vec();
    let mut ss = s.as_slice().to_vec();
    dft.forward(&mut hh);
    dft.forward(&mut ss);
    hh.iter_mut().zip(&ss).for_each(|(a, b)| *a *= b);
    dft.inverse(&mut hh);
    Ok(ComplexVector::from_vec_unchecked(hh))
}

fn check_dense_product(n: usize) -> Result<()> {
    if n > DENSE_PRODUCT_CAP {
        return Err(DfntError::SizeOverflow {
            size: n,
            cap: DENSE_PRODUCT_CAP * DENSE_PRODUCT_CAP,
        });
    }
    Ok(())
}

fn conjugate_dense(op: &DfntOperator, z: &DenseMatrix) -> Result<DenseMatrix> {
    check_dense_product(op.size())?;
    let psi = op.materialize()?;
    psi.mul(z)?.mul(&psi.adjoint())
}

/// `Ψ L^k Ψ^H` as a dense matrix; equals `L^k` for the modern transform.
pub fn conjugate_downshift(op: &DfntOperator, k: usize) -> Result<DenseMatrix> {
    if op.variant() != Variant::Modern {
        return Err(DfntError::UnsupportedVariant);
    }
    let n = op.size();
    if k >= n {
        return Err(DfntError::IndexOutOfRange { index: k, size: n });
    }
    conjugate_dense(op, &DenseMatrix::downshift_power(n, k))
}

/// `Ψ Z Ψ^H` as a dense matrix.
pub fn similarity_transform(op: &DfntOperator, z: &CirculantOperator) -> Result<DenseMatrix> {
    if z.size() != op.size() {
        return Err(DfntError::LengthMismatch {
            expected: op.size(),
            actual: z.size(),
        });
    }
    conjugate_dense(op, &z.to_dense())
}

/// `max_n max(|Ψ(h⊛s) − h⊛(Ψs)|, |Ψ(h⊛s) − (Ψh)⊛s|)` for the given kernel variant.
pub fn theorem_residual(h: &ComplexVector, s: &ComplexVector, variant: Variant) -> Result<f64> {
    s.check_len(h.len())?;
    let op = DfntOperator::new(h.len(), variant)?;
    let lhs = op.apply(&circular_convolve(h, s)?)?;
    let via_s = circular_convolve(h, &op.apply(s)?)?;
    let via_h = circular_convolve(&op.apply(h)?, s)?;
    Ok(lhs.max_abs_diff(&via_s)?.max(lhs.max_abs_diff(&via_h)?))
}
