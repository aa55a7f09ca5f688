//! Output records and the three renderers (table, csv, json lines).

use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

/// One JSON line. Field order is fixed by the struct; nested objects are
/// `serde_json::Map`, which keeps keys sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Value,
    pub version: String,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub inputs: Value,
    pub result: Value,
    pub witnesses: Value,
    pub cells: Vec<String>,
}

/// Everything a subcommand produced, ready to render.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Row>,
    /// Replaces the aligned table in `table` format.
    pub table_text: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, headers: Vec<&'static str>) -> Self {
        Self {
            command,
            headers,
            rows: Vec::new(),
            table_text: None,
        }
    }

    pub fn records(&self) -> Vec<OutputRecord> {
        self.rows
            .iter()
            .map(|r| OutputRecord {
                command: self.command.to_string(),
                inputs: r.inputs.clone(),
                result: r.result.clone(),
                witnesses: r.witnesses.clone(),
                version: VERSION.to_string(),
            })
            .collect()
    }

    pub fn render(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => {
                for rec in self.records() {
                    let line = serde_json::to_string(&rec).map_err(io::Error::other)?;
                    writeln!(out, "{line}")?;
                }
            }
            OutputFormat::Csv => {
                writeln!(out, "{}", self.headers.join(","))?;
                for row in &self.rows {
                    writeln!(out, "{}", row.cells.join(","))?;
                }
            }
            OutputFormat::Table => match &self.table_text {
                Some(text) => writeln!(out, "{text}")?,
                None => write_table(out, &self.headers, &self.rows)?,
            },
        }
        Ok(())
    }
}

fn write_table(out: &mut dyn Write, headers: &[&str], rows: &[Row]) -> io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(&row.cells) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(headers.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.cells.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}
