//! Discrete Fresnel transform (DFnT) without degeneracy.
//!
//! The transform of size `N` is the unitary circulant chirp matrix
//!
//! ```text
//! Ψ(m, n) = e^{-jπ/4}/√N · e^{jπ(m-n)²/N}        N even
//! Ψ(m, n) = e^{-jπ/4}/√N · e^{jπ(m-n+1/2)²/N}    N odd
//! ```
//!
//! It is diagonalized by the DFT, maps circular convolutions onto circular
//! convolutions, and gives the field coefficients of a periodic grating at
//! the fractional Talbot distance `Z_T/N`.
//!
//! The crate is split into:
//!  - [`operator`]: entry kernels, eigenvalues, determinant and the
//!    [`DfntOperator`] with direct `O(N²)` and FFT `O(N log N)` application.
//!  - [`convolution`]: circulant operators, circular convolution and the
//!    similarity / convolution-theorem checks.
//!  - [`talbot`]: grating propagation, the spectral Fresnel propagator and
//!    the degeneracy scan at `2Z_T/N`.

pub mod convolution;
pub mod dense;
pub mod error;
mod fft;
pub mod operator;
pub mod talbot;
pub mod vector;

pub use num_complex::Complex64;

pub use convolution::{
    circular_convolve, conjugate_downshift, similarity_transform, theorem_residual,
    CirculantOperator,
};
pub use dense::DenseMatrix;
pub use error::{DfntError, Result};
pub use operator::{
    determinant_closed, dfnt_entry, eigenvalue, legacy_entry, DfntOperator, Parity, Variant,
};
pub use talbot::{
    degeneracy_scan, spectral_propagate, talbot_coefficients, Fraction, GratingProfile,
    TalbotField,
};
pub use vector::ComplexVector;
