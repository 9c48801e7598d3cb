//! Rendering of command results as text, CSV or JSON.

use std::io::Write;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use xcdof::rational::{to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exact value, with an approximate decimal when requested.
pub fn show(x: &Rational, decimal: bool) -> String {
    if decimal && !x.is_integer() {
        format!("{x} ({:.6})", to_f64(x))
    } else {
        x.to_string()
    }
}

pub fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).context("writing JSON")?;
    writeln!(out)?;
    Ok(())
}

/// `key = value` lines as text or as a two-column CSV.
pub fn pairs(out: &mut dyn Write, format: Format, rows: &[(String, String)]) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"])?;
            for (k, v) in rows {
                w.write_record([k, v])?;
            }
            w.flush()?;
        }
        _ => {
            for (k, v) in rows {
                writeln!(out, "{k} = {v}")?;
            }
        }
    }
    Ok(())
}

/// A table with a fixed header. Columns listed in `exact` hold rationals;
/// with `decimal` each gets an extra `<name>_decimal` column.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Appends approximate columns for the named rational columns.
    pub fn with_decimals(mut self, exact: &[&str]) -> Self {
        let idx: Vec<usize> = exact
            .iter()
            .filter_map(|name| self.header.iter().position(|h| h == name))
            .collect();
        for &i in &idx {
            let name = format!("{}_decimal", self.header[i]);
            self.header.push(name);
        }
        for row in &mut self.rows {
            for &i in &idx {
                let d = xcdof::rational::parse(&row[i])
                    .map(|x| format!("{:.6}", to_f64(&x)))
                    .unwrap_or_default();
                row.push(d);
            }
        }
        self
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}
