use std::io::{self, Write};
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Provenance attached to every output.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub flags: Value,
    pub seed: Option<u64>,
    pub duration_ms: f64,
}

impl RunManifest {
    pub fn new(subcommand: &str, flags: Value, seed: Option<u64>, elapsed: Duration) -> Self {
        Self {
            tool: "polygap",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            flags,
            seed,
            duration_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes either the CSV table (manifest as a leading comment) or the JSON
/// document `{schema_version, manifest, result}`.
pub fn emit(format: Format, manifest: &RunManifest, table: &Table, result: Value) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Csv => {
            writeln!(out, "# manifest: {}", serde_json::to_string(manifest)?)?;
            writeln!(out, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "manifest": manifest,
                "result": result,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    out.flush()
}

pub fn opt_f64(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
