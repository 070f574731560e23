use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dfnt::{Fraction, Variant};

pub const DEFAULT_SEED: u64 = 20_190_611;

#[derive(Debug, Parser)]
#[command(name = "dfnt", version, about = "Discrete Fresnel transform toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Transform kernel.
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Modern)]
    pub variant: VariantArg,

    /// Shorthand for `--variant legacy`.
    #[arg(long, global = true)]
    pub legacy: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Emit stdout tables as CSV.
    #[arg(long, global = true)]
    pub csv: bool,
}

impl GlobalArgs {
    pub fn variant(&self) -> Variant {
        if self.legacy {
            Variant::Legacy
        } else {
            self.variant.into()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Modern,
    Legacy,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Modern => Variant::Modern,
            VariantArg::Legacy => Variant::Legacy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Direct,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    /// Ψ(h ⊛ s)
    None,
    /// (Ψh) ⊛ s
    H,
    /// h ⊛ (Ψs)
    S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OffsetArg {
    Auto,
    Value(f64),
}

fn parse_offset(s: &str) -> Result<OffsetArg, String> {
    if s == "auto" {
        return Ok(OffsetArg::Auto);
    }
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad offset {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad offset {s:?}"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("bad offset {s:?}"))?,
    };
    if (0.0..1.0).contains(&value) {
        Ok(OffsetArg::Value(value))
    } else {
        Err(format!("offset must lie in [0, 1), got {s}"))
    }
}

fn parse_fraction(s: &str) -> Result<Fraction, String> {
    s.parse::<Fraction>().map_err(|e| e.to_string())
}

/// Parses `a..b` or `a..=b`, both inclusive, with `1 ≤ a ≤ b`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a == 0 {
        return Err("sizes start at 1".into());
    }
    if b < a {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the N×N matrix as `m,n,re,im` rows.
    Matrix {
        n: usize,
    },
    /// Transform a `re,im` vector file.
    Transform {
        input: PathBuf,
        /// Apply the inverse (adjoint) transform.
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t = PathArg::Fast)]
        path: PathArg,
    },
    /// Transformed circular convolution of two vector files.
    Convolve {
        h: PathBuf,
        s: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::None)]
        side: SideArg,
        /// Compute all three sides and fail if they disagree by more than 1e-11.
        #[arg(long)]
        strict: bool,
    },
    /// Print eigenvalues and the closed-form determinant.
    Eig {
        n: usize,
    },
    /// Propagate a grating to a fractional Talbot distance.
    Talbot {
        grating: PathBuf,
        /// Grating period d.
        #[arg(long, default_value_t = 1.0)]
        period: f64,
        /// Wavelength λ.
        #[arg(long, default_value_t = 1.0)]
        wavelength: f64,
        /// Distance as a fraction p/q of the Talbot length d²/λ.
        #[arg(long, value_parser = parse_fraction)]
        fraction: Fraction,
        /// Output grid offset in units of d/N: `auto`, a decimal or `a/b`.
        /// `auto` is 1/2 when p·q is odd (e.g. 1/N with N odd) and 0 otherwise.
        #[arg(long, value_parser = parse_offset, default_value = "auto")]
        offset: OffsetArg,
    },
    /// Run the property suite; exit 0 iff every property passes.
    Verify {
        /// Inclusive size range.
        #[arg(long, value_parser = parse_range, default_value = "1..32")]
        n_range: RangeInclusive<usize>,
        /// Comma-separated property names (all when omitted).
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1..32").unwrap(), 1..=32);
        assert_eq!(parse_range("3..=5").unwrap(), 3..=5);
        assert!(parse_range("0..4").is_err());
        assert!(parse_range("5..4").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn offset_parsing() {
        assert_eq!(parse_offset("auto").unwrap(), OffsetArg::Auto);
        assert_eq!(parse_offset("1/2").unwrap(), OffsetArg::Value(0.5));
        assert_eq!(parse_offset("0.25").unwrap(), OffsetArg::Value(0.25));
        assert!(parse_offset("1").is_err());
        assert!(parse_offset("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
