//! CSV vector and table files.
//!
//! Vector files hold one `re,im` pair per row with an optional `re,im`
//! header. Values are written with 17 significant digits, which round-trips
//! every `f64` exactly.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use dfnt::{Complex64, ComplexVector};

use crate::CliError;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_vector(text: &str, origin: &str) -> Result<ComplexVector, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| CliError::Usage(format!("{origin}: row {}: {e}", row + 1)))?;
        if row == 0 && record.len() == 2 && &record[0] == "re" && &record[1] == "im" {
            continue;
        }
        if record.len() != 2 {
            return Err(CliError::Usage(format!(
                "{origin}: row {}: expected 2 fields, found {}",
                row + 1,
                record.len()
            )));
        }
        let field = |i: usize| -> Result<f64, CliError> {
            let v: f64 = record[i].parse().map_err(|_| {
                CliError::Usage(format!("{origin}: row {}: bad number {:?}", row + 1, &record[i]))
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::Usage(format!("{origin}: row {}: non-finite value", row + 1)))
            }
        };
        values.push(Complex64::new(field(0)?, field(1)?));
    }
    if values.is_empty() {
        return Err(CliError::Usage(format!("{origin}: no data rows")));
    }
    Ok(ComplexVector::new(values)?)
}

pub fn read_vector(path: &Path) -> Result<ComplexVector, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_vector(&text, &path.display().to_string())
}

pub fn write_vector(out: &mut dyn Write, v: &ComplexVector) -> io::Result<()> {
    writeln!(out, "re,im")?;
    for z in v.iter() {
        writeln!(out, "{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    Ok(())
}

/// Opens `--out` or stdout and runs `body` against it, mapping failures to exit 3.
pub fn with_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    let io_err = |e: io::Error| {
        let target = path.map_or("stdout".to_string(), |p| p.display().to_string());
        CliError::Io(format!("{target}: {e}"))
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            body(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
    }
}
