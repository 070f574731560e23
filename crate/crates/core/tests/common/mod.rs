//! Independent oracles shared by the integration tests. Nothing here goes
//! through the library's FFT or integer phase reduction.

#![allow(dead_code)]

use std::f64::consts::PI;

use dfnt::{Complex64, ComplexVector, DenseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform sample from the closed unit disc.
pub fn unit_disc(rng: &mut impl Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    let theta = rng.gen_range(0.0..2.0 * PI);
    Complex64::from_polar(r, theta)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> ComplexVector {
    ComplexVector::new((0..n).map(|_| unit_disc(rng)).collect()).unwrap()
}

/// Entry formula evaluated straight in floating point.
pub fn oracle_entry(n: usize, m: usize, col: usize, legacy: bool) -> Complex64 {
    let shift = if n % 2 == 1 && !legacy { 0.5 } else { 0.0 };
    let d = m as f64 - col as f64 + shift;
    let phase = PI * d * d / n as f64 - PI / 4.0;
    Complex64::from_polar(1.0 / (n as f64).sqrt(), phase)
}

pub fn oracle_matrix(n: usize, legacy: bool) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |m, c| oracle_entry(n, m, c, legacy))
}

/// `X_k = Σ_n x_n e^{sign·j2πkn/N}`, summed naively.
pub fn naive_dft(x: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, v)| {
                    let angle = sign * 2.0 * PI * ((k * i) % n) as f64 / n as f64;
                    v * Complex64::from_polar(1.0, angle)
                })
                .sum()
        })
        .collect()
}

/// `r(n) = Σ_k h(k) s((n - k) mod N)` by double loop.
pub fn naive_convolve(h: &[Complex64], s: &[Complex64]) -> Vec<Complex64> {
    let n = h.len();
    (0..n)
        .map(|i| (0..n).map(|k| h[k] * s[(i + n - k) % n]).sum())
        .collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
