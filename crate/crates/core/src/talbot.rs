//! Talbot images of an infinitely periodic grating.
//!
//! Two independent routes produce the field at a fractional Talbot distance
//! `z = (p/q)·Z_T`, `Z_T = d²/λ`:
//!
//!  - [`talbot_coefficients`] applies the DFnT to the grating samples, giving
//!    the field at `Z_T/N` on the grid `m·d/N` (even `N`) or `(m + 1/2)·d/N`
//!    (odd `N`).
//!  - [`spectral_propagate`] multiplies each grating harmonic `k` by the
//!    Fresnel transfer phase `e^{-jπ(p/q)k²}` and evaluates the resulting
//!    trigonometric polynomial on a shifted sample grid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{DfntError, Result};
use crate::fft::Dft;
use crate::operator::{DfntOperator, Parity, Variant};
use crate::vector::ComplexVector;

/// Relative magnitude below which a coefficient counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// A reduced fraction `p/q` of the Talbot length, `q ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    numer: i64,
    denom: u64,
}

impl Fraction {
    pub fn new(numer: i64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(DfntError::InvalidFraction);
        }
        let g = (numer.unsigned_abs()).gcd(&denom);
        Ok(Self {
            numer: numer / g as i64,
            denom: denom / g,
        })
    }

    pub fn numer(&self) -> i64 {
        self.numer
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn as_f64(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl FromStr for Fraction {
    type Err = DfntError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || DfntError::InvalidParameter(format!("malformed fraction {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

/// One period of a grating's complex transmittance sampled at `n·d/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GratingProfile {
    samples: ComplexVector,
    period_d: f64,
    wavelength_lambda: f64,
}

impl GratingProfile {
    pub fn new(samples: ComplexVector, period_d: f64, wavelength_lambda: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(period_d) {
            return Err(DfntError::InvalidParameter(format!(
                "grating period must be positive, got {period_d}"
            )));
        }
        if !positive(wavelength_lambda) {
            return Err(DfntError::InvalidParameter(format!(
                "wavelength must be positive, got {wavelength_lambda}"
            )));
        }
        let z_t = period_d * period_d / wavelength_lambda;
        if !positive(z_t) {
            return Err(DfntError::InvalidParameter(format!(
                "Talbot length d²/λ is not finite and positive: {z_t}"
            )));
        }
        Ok(Self {
            samples,
            period_d,
            wavelength_lambda,
        })
    }

    /// Grating with unit period and wavelength; only the samples matter for
    /// fractional-distance propagation.
    pub fn unit(samples: ComplexVector) -> Self {
        Self {
            samples,
            period_d: 1.0,
            wavelength_lambda: 1.0,
        }
    }

    pub fn samples(&self) -> &ComplexVector {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn period(&self) -> f64 {
        self.period_d
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength_lambda
    }

    /// `Z_T = d²/λ`.
    pub fn talbot_length(&self) -> f64 {
        self.period_d * self.period_d / self.wavelength_lambda
    }
}

/// Field samples at `(m + grid_offset)·d/N` after propagating `z_fraction·Z_T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TalbotField {
    pub values: ComplexVector,
    pub grid_offset: f64,
    pub z_fraction: Fraction,
}

impl TalbotField {
    /// Propagation distance for the given grating.
    pub fn distance(&self, grating: &GratingProfile) -> f64 {
        self.z_fraction.as_f64() * grating.talbot_length()
    }

    /// Transverse sample positions in the grating's length units.
    pub fn positions(&self, period_d: f64) -> Vec<f64> {
        let n = self.values.len() as f64;
        (0..self.values.len())
            .map(|m| (m as f64 + self.grid_offset) * period_d / n)
            .collect()
    }
}

/// Output grid offset (in units of `d/N`) of the DFnT for size `n`.
pub fn dfnt_grid_offset(n: usize) -> f64 {
    match Parity::of(n) {
        Parity::Even => 0.0,
        Parity::Odd => 0.5,
    }
}

/// Field at `Z_T/N` from the degeneracy-free DFnT of the grating samples.
pub fn talbot_coefficients(grating: &GratingProfile) -> Result<TalbotField> {
    let n = grating.len();
    let op = DfntOperator::new(n, Variant::Modern)?;
    Ok(TalbotField {
        values: op.apply_fast(grating.samples())?,
        grid_offset: dfnt_grid_offset(n),
        z_fraction: Fraction::new(1, n as u64)?,
    })
}

/// Where the unpaired Nyquist harmonic of an even-length grating is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NyquistBin {
    /// Harmonics `-N/2 ..= N/2 - 1`.
    #[default]
    Negative,
    /// Harmonics `-N/2 + 1 ..= N/2`.
    Positive,
}

/// Exact Fresnel propagation of the grating's trigonometric interpolant to
/// `(p/q)·Z_T`, sampled at `(m + grid_offset)·d/N`. Negative `p` propagates
/// backwards.
pub fn spectral_propagate(
    grating: &GratingProfile,
    p: i64,
    q: u64,
    grid_offset: f64,
) -> Result<TalbotField> {
    spectral_propagate_with(grating, Fraction::new(p, q)?, grid_offset, NyquistBin::Negative)
}

pub fn spectral_propagate_with(
    grating: &GratingProfile,
    z_fraction: Fraction,
    grid_offset: f64,
    nyquist: NyquistBin,
) -> Result<TalbotField> {
    if !(0.0..1.0).contains(&grid_offset) {
        return Err(DfntError::InvalidParameter(format!(
            "grid offset must lie in [0, 1), got {grid_offset}"
        )));
    }
    let n = grating.len();
    let dft = Dft::new(n);
    let mut buf = grating.samples().as_slice().to_vec();
    dft.forward(&mut buf);

    let p = i128::from(z_fraction.numer());
    let q = i128::from(z_fraction.denom());
    for (bin, z) in buf.iter_mut().enumerate() {
        let k = harmonic(bin, n, nyquist);
        // e^{-jπ(p/q)k²}, reduced exactly mod 2π
        let mut r = (p * k * k).rem_euclid(2 * q);
        if r > q {
            r -= 2 * q;
        }
        let fresnel = Complex64::from_polar(1.0, -PI * r as f64 / q as f64);
        let shift = Complex64::from_polar(1.0, 2.0 * PI * k as f64 * grid_offset / n as f64);
        *z *= fresnel * shift;
    }
    dft.inverse(&mut buf);

    Ok(TalbotField {
        values: ComplexVector::from_vec_unchecked(buf),
        grid_offset,
        z_fraction,
    })
}

/// Centered harmonic index of DFT bin `bin`.
fn harmonic(bin: usize, n: usize, nyquist: NyquistBin) -> i128 {
    let (bin, n) = (bin as i128, n as i128);
    let upper = match nyquist {
        NyquistBin::Negative => (n + 1) / 2,
        NyquistBin::Positive => n / 2 + 1,
    };
    if bin < upper {
        bin
    } else {
        bin - n
    }
}

/// Indices whose magnitude is below `rel · max magnitude`.
pub fn near_zero_positions(values: &ComplexVector, rel: f64) -> Vec<usize> {
    let threshold = rel * values.max_abs();
    values
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() < threshold)
        .map(|(m, _)| m)
        .collect()
}

/// Positions of the vanishing coefficients of a delta grating at `2Z_T/N`.
pub fn degenerate_positions(n: usize) -> Result<Vec<usize>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(DfntError::InvalidSize(n));
    }
    let grating = GratingProfile::unit(ComplexVector::delta(n, 0)?);
    let field = spectral_propagate(&grating, 2, n as u64, 0.0)?;
    Ok(near_zero_positions(&field.values, ZERO_THRESHOLD))
}

/// Number of vanishing coefficients of a delta grating at `2Z_T/N` (even `N`).
pub fn degeneracy_scan(n: usize) -> Result<usize> {
    degenerate_positions(n).map(|zeros| zeros.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fraction_reduces_and_parses() {
        let f = Fraction::new(2, 4).unwrap();
        assert_eq!((f.numer(), f.denom()), (1, 2));
        assert_eq!(Fraction::new(0, 7).unwrap(), Fraction::new(0, 1).unwrap());
        assert_eq!(Fraction::new(-6, 4).unwrap().to_string(), "-3/2");
        assert_eq!(Fraction::new(1, 0), Err(DfntError::InvalidFraction));
        assert_eq!(" 2 / 8 ".parse::<Fraction>().unwrap(), Fraction::new(1, 4).unwrap());
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("half".parse::<Fraction>().is_err());
        assert!("1/x".parse::<Fraction>().is_err());
    }

    #[test]
    fn grating_validation() {
        let s = ComplexVector::delta(4, 0).unwrap();
        assert!(GratingProfile::new(s.clone(), 0.0, 1.0).is_err());
        assert!(GratingProfile::new(s.clone(), 1.0, -1.0).is_err());
        assert!(GratingProfile::new(s.clone(), 1.0, f64::NAN).is_err());
        assert!(GratingProfile::new(s.clone(), 1e200, 1e-200).is_err());
        let g = GratingProfile::new(s, 2e-3, 5e-7).unwrap();
        assert!((g.talbot_length() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn zero_distance_is_identity() {
        let s = ComplexVector::from_parts(&[1.0, 0.2, -0.3, 0.7, 0.1], &[0.0, 0.5, 0.1, -0.2, 0.9])
            .unwrap();
        let field = spectral_propagate(&GratingProfile::unit(s.clone()), 0, 1, 0.0).unwrap();
        assert!(field.values.max_abs_diff(&s).unwrap() < 1e-15);
    }

    #[test]
    fn delta_grating_at_half_period_fraction() {
        let g = GratingProfile::unit(ComplexVector::delta(4, 0).unwrap());
        let field = spectral_propagate(&g, 2, 4, 0.0).unwrap();
        let expected = [c(0.5, -0.5), c(0.0, 0.0), c(0.5, 0.5), c(0.0, 0.0)];
        for (got, want) in field.values.iter().zip(expected) {
            assert!((got - want).norm() < 1e-15, "{got} vs {want}");
        }
        assert_eq!(field.z_fraction, Fraction::new(1, 2).unwrap());
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_scan(2).unwrap(), 1);
        assert_eq!(degeneracy_scan(4).unwrap(), 2);
        assert_eq!(degeneracy_scan(8).unwrap(), 4);
        assert_eq!(degenerate_positions(4).unwrap(), vec![1, 3]);
        assert_eq!(degeneracy_scan(5), Err(DfntError::InvalidSize(5)));
        assert_eq!(degeneracy_scan(0), Err(DfntError::InvalidSize(0)));
    }

    #[test]
    fn talbot_coefficients_examples() {
        let g = GratingProfile::unit(ComplexVector::delta(4, 0).unwrap());
        let field = talbot_coefficients(&g).unwrap();
        assert_eq!(field.grid_offset, 0.0);
        assert_eq!(field.z_fraction, Fraction::new(1, 4).unwrap());
        for z in field.values.iter() {
            assert!((z.norm() - 0.5).abs() < 1e-15);
        }

        let ones = ComplexVector::from_parts(&[1.0; 7], &[0.0; 7]).unwrap();
        let field = talbot_coefficients(&GratingProfile::unit(ones.clone())).unwrap();
        assert_eq!(field.grid_offset, 0.5);
        assert!(field.values.max_abs_diff(&ones).unwrap() < 1e-14);

        let single = ComplexVector::new(vec![c(0.25, -0.5)]).unwrap();
        let field = talbot_coefficients(&GratingProfile::unit(single.clone())).unwrap();
        assert!(field.values.max_abs_diff(&single).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_bad_offset() {
        let g = GratingProfile::unit(ComplexVector::delta(3, 0).unwrap());
        assert!(spectral_propagate(&g, 1, 3, 1.0).is_err());
        assert!(spectral_propagate(&g, 1, 3, -0.1).is_err());
        assert_eq!(
            spectral_propagate(&g, 1, 0, 0.0),
            Err(DfntError::InvalidFraction)
        );
    }

    #[test]
    fn backward_propagation_undoes_forward() {
        let s = ComplexVector::from_parts(&[0.3, -1.0, 0.4, 0.9, 0.0, 0.2], &[0.1; 6]).unwrap();
        let fwd = spectral_propagate(&GratingProfile::unit(s.clone()), 3, 7, 0.0).unwrap();
        let back = spectral_propagate(&GratingProfile::unit(fwd.values), -3, 7, 0.0).unwrap();
        assert!(back.values.max_abs_diff(&s).unwrap() < 1e-14);
    }

    #[test]
    fn positions_follow_offset() {
        let g = GratingProfile::new(ComplexVector::delta(3, 0).unwrap(), 3.0, 1.0).unwrap();
        let field = talbot_coefficients(&g).unwrap();
        assert_eq!(field.positions(g.period()), vec![0.5, 1.5, 2.5]);
        assert!((field.distance(&g) - 3.0).abs() < 1e-15);
    }
}
