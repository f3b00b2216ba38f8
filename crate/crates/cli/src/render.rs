//! Writing reports as aligned tables, JSON or CSV.

use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::{Format, Output};

/// A rendered report: JSON always, plus a table and CSV rows.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, table: String::new(), csv_header: Vec::new(), csv_rows: Vec::new() }
    }

    pub fn header(&mut self, cols: &[&str]) {
        self.csv_header = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.csv_rows.push(cells);
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.table.push_str(text.as_ref());
        self.table.push('\n');
    }

    fn bytes(&self, format: Format) -> Result<Vec<u8>> {
        Ok(match format {
            Format::Table => self.table.clone().into_bytes(),
            Format::Json => {
                let mut v = serde_json::to_vec_pretty(&self.json)?;
                v.push(b'\n');
                v
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header)?;
                for r in &self.csv_rows {
                    w.write_record(r)?;
                }
                w.into_inner().context("flushing csv")?
            }
        })
    }

    pub fn emit(&self, out: &Output) -> Result<()> {
        let bytes = self.bytes(out.format)?;
        match &out.out {
            Some(path) => fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
            None => std::io::stdout().write_all(&bytes).context("writing stdout"),
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let n = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..n).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn fmt_row(v: &[f64]) -> String {
    let cells: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    format!("[{}]", cells.join(" "))
}
