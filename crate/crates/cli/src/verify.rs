//! Property suite behind `dfnt verify`.

use std::f64::consts::PI;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::Path;

use dfnt::convolution::circular_convolve;
use dfnt::operator::eigenvector;
use dfnt::talbot::{degeneracy_scan, dfnt_grid_offset, near_zero_positions, ZERO_THRESHOLD};
use dfnt::{
    conjugate_downshift, determinant_closed, legacy_entry, similarity_transform,
    spectral_propagate, talbot_coefficients, theorem_residual, CirculantOperator, Complex64,
    ComplexVector, DenseMatrix, DfntOperator, GratingProfile, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::with_output;
use crate::CliError;

// Dense O(N³) checks stop here regardless of the requested range.
const DENSE_MAX: usize = 64;
const TRIPLE_PRODUCT_MAX: usize = 32;
const DENSE_DET_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub status: Status,
    pub measured: f64,
    /// `"<"` when `measured` must stay below `threshold`, `">"` when above.
    pub relation: &'static str,
    pub threshold: f64,
    pub note: String,
}

impl Check {
    fn below(measured: f64, threshold: f64, note: impl Into<String>) -> Self {
        Self {
            status: if measured < threshold { Status::Pass } else { Status::Fail },
            measured,
            relation: "<",
            threshold,
            note: note.into(),
        }
    }

    fn above(measured: f64, threshold: f64, note: impl Into<String>) -> Self {
        Self {
            status: if measured > threshold { Status::Pass } else { Status::Fail },
            measured,
            relation: ">",
            threshold,
            note: note.into(),
        }
    }

    fn skip(note: impl Into<String>) -> Self {
        Self {
            status: Status::Skip,
            measured: f64::NAN,
            relation: "",
            threshold: f64::NAN,
            note: note.into(),
        }
    }
}

pub struct Ctx {
    pub sizes: RangeInclusive<usize>,
    pub seed: u64,
}

impl Ctx {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    fn sizes_up_to(&self, cap: usize) -> RangeInclusive<usize> {
        *self.sizes.start()..=(*self.sizes.end()).min(cap)
    }
}

type Property = (&'static str, fn(&Ctx) -> Result<Check, dfnt::DfntError>);

pub const PROPERTIES: &[Property] = &[
    ("unitarity", unitarity),
    ("circulance", circulance),
    ("symmetry", symmetry),
    ("eigen", eigen),
    ("spectrum", spectrum),
    ("determinant", determinant),
    ("determinant-dense", determinant_dense),
    ("fast-direct", fast_direct),
    ("inverse", inverse),
    ("convolution", convolution),
    ("commutativity", commutativity),
    ("conjugation", conjugation),
    ("similarity", similarity),
    ("legacy-even", legacy_even),
    ("legacy-odd", legacy_odd),
    ("talbot-oracle", talbot_oracle),
    ("propagation-energy", propagation_energy),
    ("degeneracy", degeneracy),
];

fn random_vector(rng: &mut impl Rng, n: usize) -> ComplexVector {
    let values = (0..n)
        .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    ComplexVector::new(values).expect("finite samples")
}

fn unitarity(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(DENSE_MAX) {
        let psi = DfntOperator::new(n, Variant::Modern)?.materialize()?;
        let gram = psi.adjoint().mul(&psi)?;
        worst = worst.max(gram.max_abs_diff(&DenseMatrix::identity(n))?);
    }
    Ok(Check::below(worst, 1e-12, "max |Ψ^HΨ - I|"))
}

fn circulance(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let size = n as i64;
        let step = 1 + n / 16;
        for m in (0..size).step_by(step) {
            for c in (0..size).step_by(step) {
                let base = Variant::Modern.wrapped_entry(n, m, c)?;
                for (a, b) in [(1, 0), (0, -1), (-2, 3)] {
                    let far = Variant::Modern.wrapped_entry(n, m + a * size, c + b * size)?;
                    worst = worst.max((base - far).norm());
                }
                let diag = Variant::Modern.wrapped_entry(n, m + 1, c + 1)?;
                worst = worst.max((base - diag).norm());
            }
        }
    }
    Ok(Check::below(worst, 1e-13, "max |Ψ(m,n) - Ψ(m+1,n+1)| with periodic indices"))
}

fn symmetry(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(DENSE_MAX) {
        for m in 0..n {
            for c in 0..n {
                let lhs = dfnt::dfnt_entry(n, m, c)?;
                let rhs = if n % 2 == 0 {
                    dfnt::dfnt_entry(n, c, m)?
                } else {
                    dfnt::dfnt_entry(n, (c + n - 1) % n, m)?
                };
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    Ok(Check::below(worst, 1e-13, "even: Ψ(m,n) = Ψ(n,m); odd: Ψ(m,n) = Ψ(n-1,m)"))
}

fn eigen(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(DENSE_MAX) {
        let op = DfntOperator::new(n, Variant::Modern)?;
        for k in 0..n {
            let w = eigenvector(n, k)?;
            let lhs = op.apply_direct(&w)?;
            let eta = op.spectrum()[k];
            let rhs = ComplexVector::new(w.iter().map(|v| eta * v).collect())?;
            worst = worst.max(lhs.max_abs_diff(&rhs)?);
        }
    }
    Ok(Check::below(worst, 1e-12, "max |Ψw_k - η_k w_k|, w_k(n) = e^{-j2πkn/N}/√N"))
}

fn spectrum(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(DENSE_MAX) {
        let op = DfntOperator::new(n, Variant::Modern)?;
        let col = op.column(0)?;
        for k in 0..n {
            // forward DFT of column 0 at bin k equals η_{-k}
            let bin: Complex64 = col
                .iter()
                .enumerate()
                .map(|(i, c)| c * Complex64::from_polar(1.0, -2.0 * PI * ((k * i) % n) as f64 / n as f64))
                .sum();
            worst = worst.max((bin - op.spectrum()[(n - k) % n]).norm());
        }
    }
    Ok(Check::below(worst, 1e-12, "max |DFT(column 0)_k - η_{-k}|"))
}

fn determinant(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let op = DfntOperator::new(n, Variant::Modern)?;
        let prod = op.spectrum().iter().fold(Complex64::new(1.0, 0.0), |a, b| a * b);
        worst = worst.max((determinant_closed(n)? - prod).norm());
    }
    Ok(Check::below(worst, 1e-12, "max |det closed - Πη_k|"))
}

fn determinant_dense(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(DENSE_DET_MAX) {
        let det = DfntOperator::new(n, Variant::Modern)?.materialize()?.determinant()?;
        worst = worst.max((determinant_closed(n)? - det).norm());
    }
    Ok(Check::below(worst, 1e-9, "max |det closed - LU det|, N ≤ 16"))
}

fn fast_direct(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(1);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let op = DfntOperator::new(n, Variant::Modern)?;
        let x = random_vector(&mut rng, n);
        let direct = op.apply_direct(&x)?;
        let fast = op.apply_fast(&x)?;
        worst = worst.max(direct.max_abs_diff(&fast)? / direct.max_abs());
    }
    Ok(Check::below(worst, 1e-10, "max relative |fast - direct|"))
}

fn inverse(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(2);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let op = DfntOperator::new(n, Variant::Modern)?;
        let x = random_vector(&mut rng, n);
        let back = op.apply_inverse(&op.apply_fast(&x)?)?;
        worst = worst.max(back.max_abs_diff(&x)?);
    }
    Ok(Check::below(worst, 1e-12, "max |Ψ^H Ψ x - x|"))
}

fn convolution(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(3);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        for _ in 0..100 {
            let h = random_vector(&mut rng, n);
            let s = random_vector(&mut rng, n);
            worst = worst.max(theorem_residual(&h, &s, Variant::Modern)?);
        }
    }
    Ok(Check::below(worst, 1e-11, "max theorem residual, 100 trials per N"))
}

fn commutativity(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(4);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let h = random_vector(&mut rng, n);
        let s = random_vector(&mut rng, n);
        worst = worst.max(circular_convolve(&h, &s)?.max_abs_diff(&circular_convolve(&s, &h)?)?);
    }
    Ok(Check::below(worst, 1e-13, "max |h⊛s - s⊛h|"))
}

fn conjugation(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(TRIPLE_PRODUCT_MAX) {
        let op = DfntOperator::new(n, Variant::Modern)?;
        for k in 0..n {
            let got = conjugate_downshift(&op, k)?;
            worst = worst.max(got.max_abs_diff(&DenseMatrix::downshift_power(n, k))?);
        }
    }
    Ok(Check::below(worst, 1e-12, "max |ΨL^kΨ^H - L^k|"))
}

fn similarity(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(5);
    let mut worst = 0.0f64;
    for n in ctx.sizes_up_to(TRIPLE_PRODUCT_MAX) {
        let op = DfntOperator::new(n, Variant::Modern)?;
        for _ in 0..20 {
            let z = CirculantOperator::new(random_vector(&mut rng, n));
            worst = worst.max(similarity_transform(&op, &z)?.max_abs_diff(&z.to_dense())?);
        }
    }
    Ok(Check::below(worst, 1e-12, "max |ΨZΨ^H - Z|, 20 circulants per N"))
}

fn legacy_even(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(6);
    let evens: Vec<usize> = ctx.sizes.clone().filter(|n| n % 2 == 0).collect();
    if evens.is_empty() {
        return Ok(Check::skip("no even N in range"));
    }
    let mut worst = 0.0f64;
    for n in evens {
        let h = random_vector(&mut rng, n);
        let s = random_vector(&mut rng, n);
        worst = worst.max(theorem_residual(&h, &s, Variant::Legacy)?);
        let op = DfntOperator::new(n, Variant::Legacy)?;
        for m in 0..n {
            worst = worst.max((op.entry(m, 0)? - dfnt::dfnt_entry(n, m, 0)?).norm());
        }
    }
    Ok(Check::below(worst, 1e-11, "even N: legacy residual and |legacy - modern|"))
}

fn legacy_odd(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(7);
    let odds: Vec<usize> = ctx.sizes.clone().filter(|n| n % 2 == 1 && *n >= 3).collect();
    if odds.is_empty() {
        return Ok(Check::skip("no odd N ≥ 3 in range"));
    }
    let mut weakest = f64::INFINITY;
    let mut noncirculant = 0;
    for &n in &odds {
        let h = random_vector(&mut rng, n);
        let s = random_vector(&mut rng, n);
        weakest = weakest.min(theorem_residual(&h, &s, Variant::Legacy)?);
        let broken = (0..n).any(|m| {
            let a = legacy_entry(n, m, n - 1).unwrap_or_default();
            let b = legacy_entry(n, (m + 1) % n, 0).unwrap_or_default();
            (a - b).norm() > 1e-6
        });
        noncirculant += usize::from(broken);
    }
    let mut check = Check::above(
        weakest,
        1e-3,
        format!(
            "violation expected: min legacy residual over odd N; {noncirculant}/{} non-circulant",
            odds.len()
        ),
    );
    if noncirculant != odds.len() {
        check.status = Status::Fail;
    }
    Ok(check)
}

fn talbot_oracle(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(8);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let g = GratingProfile::unit(random_vector(&mut rng, n));
        let dfnt = talbot_coefficients(&g)?;
        let physics = spectral_propagate(&g, 1, n as u64, dfnt_grid_offset(n))?;
        worst = worst.max(physics.values.max_abs_diff(&dfnt.values)? / dfnt.values.max_abs());
    }
    Ok(Check::below(worst, 1e-10, "max relative |spectral(1/N) - Ψ·samples|"))
}

fn propagation_energy(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let mut rng = ctx.rng(9);
    let mut worst = 0.0f64;
    for n in ctx.sizes.clone() {
        let s = random_vector(&mut rng, n);
        let g = GratingProfile::unit(s.clone());
        for (p, q) in [(1, n as u64), (2, n as u64), (-3, 7)] {
            let out = spectral_propagate(&g, p, q, 0.0)?;
            worst = worst.max((out.values.energy() - s.energy()).abs() / s.energy());
        }
    }
    Ok(Check::below(worst, 1e-12, "max relative energy change"))
}

fn degeneracy(ctx: &Ctx) -> Result<Check, dfnt::DfntError> {
    let evens: Vec<usize> = ctx.sizes.clone().filter(|n| n % 2 == 0).collect();
    if evens.is_empty() {
        return Ok(Check::skip("no even N in range"));
    }
    let mut mismatches = 0usize;
    for n in evens {
        if degeneracy_scan(n)? != n / 2 {
            mismatches += 1;
        }
        let g = GratingProfile::unit(ComplexVector::delta(n, 0)?);
        let field = talbot_coefficients(&g)?;
        mismatches += near_zero_positions(&field.values, ZERO_THRESHOLD).len();
    }
    Ok(Check::below(
        mismatches as f64,
        0.5,
        "count of N with scan ≠ N/2 plus zeros at Z_T/N",
    ))
}

pub fn run(
    sizes: RangeInclusive<usize>,
    selected: &[String],
    seed: u64,
    csv: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let chosen: Vec<&Property> = if selected.is_empty() {
        PROPERTIES.iter().collect()
    } else {
        selected
            .iter()
            .map(|name| {
                PROPERTIES.iter().find(|(n, _)| n == name).ok_or_else(|| {
                    let known: Vec<_> = PROPERTIES.iter().map(|(n, _)| *n).collect();
                    CliError::Usage(format!("unknown property {name:?}; known: {}", known.join(", ")))
                })
            })
            .collect::<Result<_, _>>()?
    };

    let ctx = Ctx { sizes, seed };
    let mut results = Vec::with_capacity(chosen.len());
    for (name, check) in chosen {
        results.push((*name, check(&ctx)?));
    }

    with_output(out, |w| write_report(w, &results, csv))?;

    let failed: Vec<&str> = results
        .iter()
        .filter(|(_, c)| c.status == Status::Fail)
        .map(|(n, _)| *n)
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("properties failed: {}", failed.join(", "))))
    }
}

fn write_report(w: &mut dyn Write, results: &[(&str, Check)], csv: bool) -> std::io::Result<()> {
    let status = |s: Status| match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    };
    if csv {
        writeln!(w, "property,status,measured,relation,threshold")?;
        for (name, c) in results {
            writeln!(
                w,
                "{name},{},{:e},{},{:e}",
                status(c.status),
                c.measured,
                c.relation,
                c.threshold
            )?;
        }
    } else {
        for (name, c) in results {
            if c.status == Status::Skip {
                writeln!(w, "SKIP  {name:<20}  {}", c.note)?;
            } else {
                writeln!(
                    w,
                    "{}  {name:<20}  {:>10.3e} {} {:<7.0e}  {}",
                    status(c.status),
                    c.measured,
                    c.relation,
                    c.threshold,
                    c.note
                )?;
            }
        }
    }
    Ok(())
}
