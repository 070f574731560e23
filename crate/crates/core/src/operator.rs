//! The DFnT operator: entry kernels, closed-form spectrum and determinant,
//! dense materialization, and direct / FFT application.
//!
//! Phases are reduced with exact integer arithmetic before calling
//! `sin`/`cos`, so entries and eigenvalues stay accurate for large `N`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dense::{DenseMatrix, DEFAULT_DENSE_CAP};
use crate::error::{DfntError, Result};
use crate::fft::Dft;
use crate::vector::ComplexVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Which kernel builds the matrix.
///
/// `Modern` switches to the half-sample-shifted chirp for odd `N` and is
/// circulant for every `N`. `Legacy` uses the even-`N` chirp for all `N`; for
/// odd `N` it is not circulant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    #[default]
    Modern,
    Legacy,
}

impl Variant {
    pub fn entry(self, n: usize, row: usize, col: usize) -> Result<Complex64> {
        check_size(n)?;
        check_index(row, n)?;
        check_index(col, n)?;
        Ok(self.kernel(n, row as i64 - col as i64))
    }

    /// Entry at arbitrary integer indices, each reduced modulo `n` first.
    pub fn wrapped_entry(self, n: usize, row: i64, col: i64) -> Result<Complex64> {
        check_size(n)?;
        let size = n as i64;
        self.entry(n, row.rem_euclid(size) as usize, col.rem_euclid(size) as usize)
    }

    /// Kernel value as a function of the integer difference `row - col`.
    fn kernel(self, n: usize, diff: i64) -> Complex64 {
        let half_shift = self == Variant::Modern && n % 2 == 1;
        chirp(n, diff, half_shift)
    }
}

/// `e^{-jπ/4}/√N · e^{jπ(d + s)²/N}` with `s = 1/2` when `half_shift`, else `0`.
///
/// The phase is `π·t/(4N)` with `t = (2d + 2s)² − N`, reduced mod `8N`. Both
/// kernels are `2N`-periodic in `d`, so `d` is reduced first.
fn chirp(n: usize, diff: i64, half_shift: bool) -> Complex64 {
    let size = n as i128;
    let d = (diff as i128).rem_euclid(2 * size);
    let twice = 2 * d + i128::from(half_shift);
    let t = twice * twice - size;
    unit_phase(t, 4 * size) / (n as f64).sqrt()
}

/// `e^{jπ·num/den}`, exact at multiples of π/2.
fn unit_phase(num: i128, den: i128) -> Complex64 {
    let period = 2 * den;
    let mut r = num.rem_euclid(period);
    if r > den {
        r -= period;
    }
    if (2 * r) % den == 0 {
        return match 2 * r / den {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            -1 => Complex64::new(0.0, -1.0),
            _ => Complex64::new(-1.0, 0.0),
        };
    }
    Complex64::from_polar(1.0, PI * r as f64 / den as f64)
}

/// `e^{-jπ·num/den}` for an exact rational angle.
fn phase_neg_pi(num: i128, den: i128) -> Complex64 {
    unit_phase(-num, den)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(DfntError::InvalidSize(0))
    } else {
        Ok(())
    }
}

fn check_index(index: usize, size: usize) -> Result<()> {
    if index >= size {
        Err(DfntError::IndexOutOfRange { index, size })
    } else {
        Ok(())
    }
}

/// Entry `(m, n)` of the degeneracy-free DFnT matrix of size `size`.
pub fn dfnt_entry(size: usize, m: usize, n: usize) -> Result<Complex64> {
    Variant::Modern.entry(size, m, n)
}

/// Entry `(m, n)` of the single-formula chirp matrix (even kernel for all sizes).
pub fn legacy_entry(size: usize, m: usize, n: usize) -> Result<Complex64> {
    Variant::Legacy.entry(size, m, n)
}

/// Eigenvalue `η_k`: `e^{-jπk²/N}` for even `N`, `e^{-jπk(k+1)/N}` for odd `N`.
///
/// Paired with the eigenvector [`eigenvector`]`(N, k)`, the `k`-th column of the
/// normalized DFT matrix.
pub fn eigenvalue(n: usize, k: usize) -> Result<Complex64> {
    check_size(n)?;
    check_index(k, n)?;
    let k = k as i128;
    let num = match Parity::of(n) {
        Parity::Even => k * k,
        Parity::Odd => k * (k + 1),
    };
    Ok(phase_neg_pi(num, n as i128))
}

/// `w_k(m) = e^{-j2πkm/N}/√N`.
pub fn eigenvector(n: usize, k: usize) -> Result<ComplexVector> {
    check_size(n)?;
    check_index(k, n)?;
    let scale = 1.0 / (n as f64).sqrt();
    let values = (0..n)
        .map(|m| scale * phase_neg_pi(2 * ((k * m) % n) as i128, n as i128))
        .collect();
    Ok(ComplexVector::from_vec_unchecked(values))
}

/// Closed-form determinant: `e^{-j(π/3)(N-1)(N-1/2)}` (even `N`),
/// `e^{-j(π/3)(N²-1)}` (odd `N`).
pub fn determinant_closed(n: usize) -> Result<Complex64> {
    check_size(n)?;
    let size = n as i128;
    Ok(match Parity::of(n) {
        // (π/3)(N-1)(N-1/2) = π(N-1)(2N-1)/6
        Parity::Even => phase_neg_pi((size - 1) * (2 * size - 1), 6),
        Parity::Odd => phase_neg_pi(size * size - 1, 3),
    })
}

/// A size-`N` DFnT with its spectrum precomputed.
///
/// `spectrum()[k]` is the eigenvalue belonging to [`eigenvector`]`(N, k)`.
/// In forward-DFT bin order (kernel `e^{-j2πkn/N}`) the multiplier of bin `k`
/// is `spectrum()[(N - k) mod N]`. Immutable once built and `Send + Sync`.
#[derive(Debug, Clone)]
pub struct DfntOperator {
    size: usize,
    variant: Variant,
    spectrum: ComplexVector,
    bins: Vec<Complex64>,
    dft: Dft,
}

impl DfntOperator {
    pub fn new(size: usize, variant: Variant) -> Result<Self> {
        check_size(size)?;
        let dft = Dft::new(size);
        let (spectrum, bins) = match variant {
            Variant::Modern => {
                let spectrum = (0..size)
                    .map(|k| eigenvalue(size, k))
                    .collect::<Result<Vec<_>>>()?;
                let bins = (0..size).map(|k| spectrum[(size - k) % size]).collect();
                (spectrum, bins)
            }
            Variant::Legacy => {
                // No closed form for odd sizes: transform column 0 numerically.
                let mut bins: Vec<Complex64> =
                    (0..size).map(|m| variant.kernel(size, m as i64)).collect();
                dft.forward(&mut bins);
                let spectrum = (0..size).map(|k| bins[(size - k) % size]).collect();
                (spectrum, bins)
            }
        };
        Ok(Self {
            size,
            variant,
            spectrum: ComplexVector::from_vec_unchecked(spectrum),
            bins,
            dft,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.size)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn spectrum(&self) -> &ComplexVector {
        &self.spectrum
    }

    /// Multipliers applied to forward-DFT bins by [`DfntOperator::apply_fast`].
    pub fn bin_multipliers(&self) -> &[Complex64] {
        &self.bins
    }

    /// True when the dense matrix is circulant, i.e. the FFT path reproduces it.
    pub fn is_circulant(&self) -> bool {
        self.variant == Variant::Modern || self.parity() == Parity::Even
    }

    pub fn entry(&self, m: usize, n: usize) -> Result<Complex64> {
        self.variant.entry(self.size, m, n)
    }

    pub fn column(&self, n: usize) -> Result<ComplexVector> {
        check_index(n, self.size)?;
        let values = (0..self.size)
            .map(|m| self.variant.kernel(self.size, m as i64 - n as i64))
            .collect();
        Ok(ComplexVector::from_vec_unchecked(values))
    }

    pub fn materialize(&self) -> Result<DenseMatrix> {
        self.materialize_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn materialize_with_cap(&self, cap: usize) -> Result<DenseMatrix> {
        let overflow = DfntError::SizeOverflow {
            size: self.size,
            cap,
        };
        match self.size.checked_mul(self.size) {
            Some(entries) if entries <= cap => {}
            _ => return Err(overflow),
        }
        Ok(DenseMatrix::from_fn(self.size, self.size, |m, n| {
            self.variant.kernel(self.size, m as i64 - n as i64)
        }))
    }

    /// `Ψx` by `O(N²)` summation over the Toeplitz kernel.
    pub fn apply_direct(&self, x: &ComplexVector) -> Result<ComplexVector> {
        x.check_len(self.size)?;
        let n = self.size;
        // kernel[d + n - 1] = Ψ(m, m - d) for d in -(n-1)..n
        let kernel: Vec<Complex64> = (0..2 * n - 1)
            .map(|i| self.variant.kernel(n, i as i64 - (n as i64 - 1)))
            .collect();
        let xs = x.as_slice();
        let out = (0..n)
            .map(|m| {
                let row = &kernel[m..m + n];
                // row[n - 1 - col] pairs with x[col]
                row.iter()
                    .rev()
                    .zip(xs)
                    .fold(Complex64::new(0.0, 0.0), |acc, (k, v)| acc + k * v)
            })
            .collect();
        Ok(ComplexVector::from_vec_unchecked(out))
    }

    /// `Ψx` as `IDFT(bins ⊙ DFT(x))` in `O(N log N)`.
    ///
    /// For the legacy variant at odd `N` this applies the circulant built from
    /// the legacy column 0, which differs from the legacy matrix itself.
    pub fn apply_fast(&self, x: &ComplexVector) -> Result<ComplexVector> {
        x.check_len(self.size)?;
        Ok(self.filter(x.as_slice(), |k| self.bins[k]))
    }

    /// Applies the operator by the cheapest route that reproduces the matrix.
    pub fn apply(&self, x: &ComplexVector) -> Result<ComplexVector> {
        if self.is_circulant() {
            self.apply_fast(x)
        } else {
            self.apply_direct(x)
        }
    }

    /// `Ψ^H y`, the inverse of the unitary transform, via the conjugate spectrum.
    pub fn apply_inverse(&self, y: &ComplexVector) -> Result<ComplexVector> {
        if self.variant != Variant::Modern {
            return Err(DfntError::UnsupportedVariant);
        }
        y.check_len(self.size)?;
        Ok(self.filter(y.as_slice(), |k| self.bins[k].conj()))
    }

    /// `Ψ^H y` by `O(N²)` summation.
    pub fn apply_inverse_direct(&self, y: &ComplexVector) -> Result<ComplexVector> {
        if self.variant != Variant::Modern {
            return Err(DfntError::UnsupportedVariant);
        }
        y.check_len(self.size)?;
        let n = self.size;
        // Ψ^H(m, col) = conj(Ψ(col, m)), a kernel in col - m
        let kernel: Vec<Complex64> = (0..2 * n - 1)
            .map(|i| self.variant.kernel(n, i as i64 - (n as i64 - 1)).conj())
            .collect();
        let ys = y.as_slice();
        let out = (0..n)
            .map(|m| {
                kernel[n - 1 - m..2 * n - 1 - m]
                    .iter()
                    .zip(ys)
                    .fold(Complex64::new(0.0, 0.0), |acc, (k, v)| acc + k * v)
            })
            .collect();
        Ok(ComplexVector::from_vec_unchecked(out))
    }

    fn filter(&self, x: &[Complex64], gain: impl Fn(usize) -> Complex64) -> ComplexVector {
        let mut buf = x.to_vec();
        self.dft.forward(&mut buf);
        buf.iter_mut().enumerate().for_each(|(k, z)| *z *= gain(k));
        self.dft.inverse(&mut buf);
        ComplexVector::from_vec_unchecked(buf)
    }
}
