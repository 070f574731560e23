//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every export takes plain numbers and returns a flat `Float64Array`, so the
//! page needs no glue beyond the generated module. Out-of-range inputs are
//! clamped rather than reported.

use dfnt::talbot::{near_zero_positions, spectral_propagate_with, NyquistBin, ZERO_THRESHOLD};
use dfnt::{
    spectral_propagate, talbot_coefficients, theorem_residual, Complex64, ComplexVector, Fraction,
    GratingProfile, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wasm_bindgen::prelude::*;

pub const MAX_SAMPLES: usize = 256;
pub const MAX_ROWS: usize = 512;
pub const MAX_OVERSAMPLE: usize = 16;
pub const MAX_RESIDUAL_N: usize = 96;

fn binary_grating(n: usize, duty: f64) -> ComplexVector {
    let open = ((duty.clamp(0.0, 1.0) * n as f64).round() as usize).clamp(1, n);
    let values = (0..n)
        .map(|m| Complex64::new(if m < open { 1.0 } else { 0.0 }, 0.0))
        .collect();
    ComplexVector::new(values).expect("non-empty grating")
}

/// Intensity `|field|²` of a binary grating over `rows` distances
/// `z = (i/rows)·span·Z_T`, `i = 0..rows`, each row sampled at
/// `n·oversample` transverse points. Row-major, `rows × (n·oversample)`.
#[wasm_bindgen]
pub fn talbot_carpet(n: usize, duty: f64, rows: usize, span: u32, oversample: usize) -> Vec<f64> {
    let n = n.clamp(1, MAX_SAMPLES);
    let rows = rows.clamp(1, MAX_ROWS);
    let oversample = oversample.clamp(1, MAX_OVERSAMPLE);
    let grating = GratingProfile::unit(binary_grating(n, duty));
    let width = n * oversample;
    let mut out = vec![0.0; rows * width];
    for i in 0..rows {
        let fraction = Fraction::new(i as i64 * i64::from(span.max(1)), rows as u64)
            .expect("rows is positive");
        for j in 0..oversample {
            let offset = j as f64 / oversample as f64;
            let field = spectral_propagate_with(&grating, fraction, offset, NyquistBin::Negative)
                .expect("offset in [0, 1)");
            for (m, z) in field.values.iter().enumerate() {
                out[i * width + m * oversample + j] = z.norm_sqr();
            }
        }
    }
    out
}

/// Coefficient magnitudes of a delta grating: the first `n` values at
/// `Z_T/N` (degeneracy-free transform), the next `n` at `2Z_T/N`, where even
/// `n` leaves half of them at zero. The last value is the zero count at
/// `2Z_T/N`.
#[wasm_bindgen]
pub fn coefficient_magnitudes(n: usize) -> Vec<f64> {
    let n = n.clamp(1, MAX_SAMPLES);
    let grating = GratingProfile::unit(ComplexVector::delta(n, 0).expect("n ≥ 1"));
    let modern = talbot_coefficients(&grating).expect("valid grating");
    let doubled = spectral_propagate(&grating, 2, n as u64, 0.0).expect("valid fraction");
    let zeros = near_zero_positions(&doubled.values, ZERO_THRESHOLD).len();
    modern
        .values
        .iter()
        .chain(doubled.values.iter())
        .map(|z| z.norm())
        .chain(std::iter::once(zeros as f64))
        .collect()
}

/// For `N = 1..=max_n`: `[modern residual, legacy residual]` of the
/// convolution identity on seeded random inputs, interleaved.
#[wasm_bindgen]
pub fn convolution_residuals(max_n: usize, seed: u32) -> Vec<f64> {
    let max_n = max_n.clamp(1, MAX_RESIDUAL_N);
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(seed));
    let mut random = |n: usize| {
        let values = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        ComplexVector::new(values).expect("finite")
    };
    let mut out = Vec::with_capacity(2 * max_n);
    for n in 1..=max_n {
        let h = random(n);
        let s = random(n);
        for variant in [Variant::Modern, Variant::Legacy] {
            out.push(theorem_residual(&h, &s, variant).expect("equal lengths"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carpet_starts_with_the_grating_and_conserves_power() {
        let n = 16;
        let carpet = talbot_carpet(n, 0.25, 8, 2, 1);
        assert_eq!(carpet.len(), 8 * n);
        let first: Vec<f64> = carpet[..n].to_vec();
        for (m, v) in first.iter().enumerate() {
            let want = if m < 4 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-12);
        }
        for row in carpet.chunks(n) {
            let power: f64 = row.iter().sum();
            assert!((power - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn carpet_revives_at_twice_the_talbot_length() {
        // rows = 4, span = 2: row 2 is Z_T (half-period shift)
        let n = 8;
        let carpet = talbot_carpet(n, 0.5, 4, 2, 1);
        let row0 = &carpet[..n];
        let row2 = &carpet[2 * n..3 * n];
        for m in 0..n {
            assert!((row2[m] - row0[(m + n / 2) % n]).abs() < 1e-12);
        }
    }

    #[test]
    fn carpet_oversampling_interleaves() {
        let carpet = talbot_carpet(6, 0.5, 3, 1, 4);
        assert_eq!(carpet.len(), 3 * 24);
        // offset 0 columns match the plain carpet
        let plain = talbot_carpet(6, 0.5, 3, 1, 1);
        for i in 0..3 {
            for m in 0..6 {
                assert!((carpet[i * 24 + m * 4] - plain[i * 6 + m]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn magnitudes_show_degeneracy_only_at_double_distance() {
        let v = coefficient_magnitudes(8);
        assert_eq!(v.len(), 17);
        assert!(v[..8].iter().all(|m| (m - 1.0 / 8f64.sqrt()).abs() < 1e-12));
        assert_eq!(v[16], 4.0);
        let v = coefficient_magnitudes(5);
        assert_eq!(v[10], 0.0);
    }

    #[test]
    fn residuals_separate_variants_for_odd_sizes() {
        let r = convolution_residuals(9, 1);
        assert_eq!(r.len(), 18);
        for n in 1..=9 {
            let (modern, legacy) = (r[2 * (n - 1)], r[2 * (n - 1) + 1]);
            assert!(modern < 1e-11);
            if n % 2 == 0 {
                assert!(legacy < 1e-11);
            } else if n >= 3 {
                assert!(legacy > 1e-3, "N={n}: {legacy}");
            }
        }
    }

    #[test]
    fn inputs_are_clamped() {
        assert_eq!(talbot_carpet(0, 2.0, 0, 0, 0).len(), 1);
        assert_eq!(coefficient_magnitudes(10_000).len(), 2 * MAX_SAMPLES + 1);
        assert_eq!(convolution_residuals(0, 0).len(), 2);
    }
}
