//! Deterministic table emission with an embedded metadata header.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use encwalk_core::FockBasisState;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Header recorded in every output: command, resolved config, seed, and
/// tool version.
#[derive(Serialize)]
pub struct Meta {
    pub command: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub config: serde_json::Value,
}

impl Meta {
    pub fn new(command: &'static str, seed: u64, config: impl Serialize) -> Self {
        Self {
            command,
            version: env!("CARGO_PKG_VERSION"),
            seed,
            config: serde_json::to_value(config).expect("config structs serialize"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Str(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Str(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(fmt_float(*v)),
            Cell::Str(s) => json!(s),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// 12 significant digits; infinities and NaN become string sentinels.
pub fn fmt_float(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:.11e}")
    }
}

pub fn write_metadata_header(w: &mut impl Write, meta: &Meta) -> CliResult<()> {
    writeln!(w, "# command: {}", meta.command)?;
    writeln!(w, "# version: {}", meta.version)?;
    writeln!(w, "# seed: {}", meta.seed)?;
    writeln!(w, "# config: {}", meta.config)?;
    Ok(())
}

pub fn write_table(
    w: &mut impl Write,
    meta: &Meta,
    table: &Table,
    format: OutputFormat,
) -> CliResult<()> {
    match format {
        OutputFormat::Csv => {
            write_metadata_header(w, meta)?;
            writeln!(w, "{}", table.columns.join(","))?;
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut obj = serde_json::Map::new();
                    for (name, cell) in table.columns.iter().zip(row) {
                        obj.insert((*name).to_string(), cell.json());
                    }
                    serde_json::Value::Object(obj)
                })
                .collect();
            let doc = json!({
                "meta": serde_json::to_value(meta).expect("meta serializes"),
                "rows": rows,
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc).expect("json emits"))?;
        }
    }
    Ok(())
}

/// Compact state rendering: digits concatenated while every occupation is
/// a single digit, dash-separated otherwise.
pub fn format_state(state: &FockBasisState) -> String {
    if state.occupations().iter().all(|&n| n <= 9) {
        state.occupations().iter().map(|n| n.to_string()).collect()
    } else {
        state
            .occupations()
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}
