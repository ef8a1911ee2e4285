//! CSV and JSON writers. Floats use Rust's shortest round-trip formatting,
//! so identical results give byte-identical files.

use std::io::Write;

use discorr_core::analysis::JointDistribution;
use serde::Serialize;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::error::CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(crate::error::CliError::spec(format!("unknown format {s:?}; expected csv or json"))),
        }
    }
}

#[derive(Serialize)]
struct GridRow {
    n: usize,
    m: usize,
    p: f64,
}

/// Long-form grid with header `n,m,p`, rows in `(n, m)` order.
pub fn write_grid_csv(out: impl Write, jd: &JointDistribution) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for ((n, m), &p) in jd.probs().indexed_iter() {
        w.serialize(GridRow { n, m, p })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(mut out: impl Write, value: &impl Serialize) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_records_csv<T: Serialize>(out: impl Write, records: &[T]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
