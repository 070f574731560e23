use dfnt::convolution::circular_convolve;
use dfnt::talbot::spectral_propagate_with;
use dfnt::{
    determinant_closed, ComplexVector, DfntOperator, GratingProfile, Variant,
};

use crate::args::{Cli, Command, OffsetArg, PathArg, SideArg};
use crate::io::{fmt_f64, read_vector, with_output, write_vector};
use crate::{verify, CliError};

/// Pairwise tolerance for `convolve --strict`.
pub const CONVOLVE_TOLERANCE: f64 = 1e-11;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Matrix { n } => matrix(*n, g.variant(), out),
        Command::Transform {
            input,
            inverse,
            path,
        } => {
            let x = read_vector(input)?;
            let y = transform(&x, g.variant(), *inverse, *path)?;
            with_output(out, |w| write_vector(w, &y))
        }
        Command::Convolve {
            h,
            s,
            side,
            strict,
        } => {
            let h = read_vector(h)?;
            let s = read_vector(s)?;
            convolve(&h, &s, g.variant(), *side, *strict, out)
        }
        Command::Eig { n } => eig(*n, g.csv, out),
        Command::Talbot {
            grating,
            period,
            wavelength,
            fraction,
            offset,
        } => {
            let samples = read_vector(grating)?;
            let grating = GratingProfile::new(samples, *period, *wavelength)?;
            talbot(&grating, *fraction, *offset, out)
        }
        Command::Verify {
            n_range,
            properties,
        } => verify::run(n_range.clone(), properties, g.seed, g.csv, out),
    }
}

fn matrix(n: usize, variant: Variant, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let dense = DfntOperator::new(n, variant)?.materialize()?;
    with_output(out, |w| {
        for (m, c, z) in dense.iter_row_major() {
            writeln!(w, "{m},{c},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
        }
        Ok(())
    })
}

pub fn transform(
    x: &ComplexVector,
    variant: Variant,
    inverse: bool,
    path: PathArg,
) -> Result<ComplexVector, CliError> {
    let op = DfntOperator::new(x.len(), variant)?;
    let y = match (inverse, path) {
        (false, PathArg::Direct) => op.apply_direct(x)?,
        (false, PathArg::Fast) => {
            if !op.is_circulant() {
                return Err(CliError::Usage(
                    "the legacy matrix is not circulant for odd N; use --path direct".into(),
                ));
            }
            op.apply_fast(x)?
        }
        (true, PathArg::Direct) => op.apply_inverse_direct(x)?,
        (true, PathArg::Fast) => op.apply_inverse(x)?,
    };
    Ok(y)
}

/// All three sides of the convolution identity: `[Ψ(h⊛s), (Ψh)⊛s, h⊛(Ψs)]`.
pub fn convolution_sides(
    h: &ComplexVector,
    s: &ComplexVector,
    variant: Variant,
) -> Result<[ComplexVector; 3], CliError> {
    if h.len() != s.len() {
        return Err(CliError::Usage(format!(
            "length mismatch: h has {} samples, s has {}",
            h.len(),
            s.len()
        )));
    }
    let op = DfntOperator::new(h.len(), variant)?;
    Ok([
        op.apply(&circular_convolve(h, s)?)?,
        circular_convolve(&op.apply(h)?, s)?,
        circular_convolve(h, &op.apply(s)?)?,
    ])
}

fn convolve(
    h: &ComplexVector,
    s: &ComplexVector,
    variant: Variant,
    side: SideArg,
    strict: bool,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let sides = convolution_sides(h, s, variant)?;
    let chosen = match side {
        SideArg::None => &sides[0],
        SideArg::H => &sides[1],
        SideArg::S => &sides[2],
    };
    with_output(out, |w| write_vector(w, chosen))?;
    if strict {
        let mut worst = 0.0f64;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            worst = worst.max(sides[i].max_abs_diff(&sides[j])?);
        }
        eprintln!("max pairwise difference between sides: {worst:.3e}");
        if worst > CONVOLVE_TOLERANCE {
            return Err(CliError::Failed(format!(
                "convolution sides disagree by {worst:.3e} (> {CONVOLVE_TOLERANCE:e})"
            )));
        }
    }
    Ok(())
}

fn eig(n: usize, csv: bool, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let op = DfntOperator::new(n, Variant::Modern)?;
    let det = determinant_closed(n)?;
    with_output(out, |w| {
        if csv {
            writeln!(w, "k,re,im")?;
            for (k, z) in op.spectrum().iter().enumerate() {
                writeln!(w, "{k},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
            }
            writeln!(w, "det,{},{}", fmt_f64(det.re), fmt_f64(det.im))
        } else {
            writeln!(w, "{:>8}  {:>24}  {:>24}", "k", "re", "im")?;
            for (k, z) in op.spectrum().iter().enumerate() {
                writeln!(w, "{k:>8}  {:>24}  {:>24}", fmt_f64(z.re), fmt_f64(z.im))?;
            }
            writeln!(w, "{:>8}  {:>24}  {:>24}", "det", fmt_f64(det.re), fmt_f64(det.im))
        }
    })
}

fn talbot(
    grating: &GratingProfile,
    fraction: dfnt::Fraction,
    offset: OffsetArg,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let offset = match offset {
        OffsetArg::Value(v) => v,
        OffsetArg::Auto => auto_offset(fraction),
    };
    let field = spectral_propagate_with(grating, fraction, offset, Default::default())?;
    with_output(out, |w| {
        for (m, z) in field.values.iter().enumerate() {
            writeln!(w, "{m},{},{},{}", field.grid_offset, fmt_f64(z.re), fmt_f64(z.im))?;
        }
        Ok(())
    })
}

/// Half-sample grid when `p·q` is odd (the reduced fraction), else the sample grid.
pub fn auto_offset(fraction: dfnt::Fraction) -> f64 {
    if fraction.numer() % 2 != 0 && !fraction.denom().is_multiple_of(2) {
        0.5
    } else {
        0.0
    }
}
