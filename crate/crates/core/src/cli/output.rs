//! Report envelopes and CSV/JSON writers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;

/// Version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    #[serde(flatten)]
    pub body: T,
}

/// A float with 17 significant digits.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes to `path`, or to `fallback` when no path is given.
pub fn sink<'a>(path: Option<&Path>, fallback: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(fallback),
    })
}

pub fn write_json<T: Serialize>(
    command: &str,
    body: T,
    path: Option<&Path>,
    fallback: &mut dyn Write,
) -> Result<()> {
    let mut w = sink(path, fallback)?;
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        body,
    };
    serde_json::to_writer_pretty(&mut w, &envelope)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes `header` and `rows` as RFC 4180 CSV.
pub fn write_csv<I, R>(header: &[String], rows: I, path: Option<&Path>, fallback: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(sink(path, fallback)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_eigenvalues(eigenvalues: &[Complex64], path: &Path) -> Result<()> {
    write_csv(
        &["re".to_string(), "im".to_string()],
        eigenvalues.iter().map(|z| [sig17(z.re), sig17(z.im)]),
        Some(path),
        &mut std::io::sink(),
    )
}

/// Reads a `re,im` eigenvalue file back.
pub fn read_eigenvalues(path: &Path) -> Result<Vec<Complex64>> {
    let mut r = csv::Reader::from_path(path)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec.get(i)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| crate::Error::Io(format!("malformed eigenvalue row {rec:?}")))
            };
            Ok(Complex64::new(parse(0)?, parse(1)?))
        })
        .collect()
}
