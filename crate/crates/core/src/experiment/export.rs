// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Tabular results and their CSV/JSON encodings.
//!
//! Floats are written with 17 significant digits so that re-reading a file
//! reproduces every value bit for bit.

use std::io::{Read, Write};

use serde::Serialize;
use serde_json::value::RawValue;

/// Version tag carried by every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    /// Written without a fractional part.
    #[serde(skip)]
    pub integer: bool,
}

impl Column {
    pub fn real(name: &str, unit: &str) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            integer: false,
        }
    }

    pub fn count(name: &str) -> Self {
        Self {
            name: name.into(),
            unit: "1".into(),
            integer: true,
        }
    }

    fn header(&self) -> String {
        format!("{} [{}]", self.name, self.unit)
    }
}

/// A named table of finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("table `{table}` holds a non-finite value in column `{column}`")]
    NonFinite { table: String, column: String },
    #[error("table `{table}` has a row of width {got}, expected {expected}")]
    Ragged { table: String, got: usize, expected: usize },
    #[error("malformed table file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Table {
    pub fn new(name: &str, columns: Vec<Column>) -> Self {
        Self {
            name: name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    fn check(&self) -> Result<(), ExportError> {
        for row in &self.rows {
            if row.len() != self.columns.len() {
                return Err(ExportError::Ragged {
                    table: self.name.clone(),
                    got: row.len(),
                    expected: self.columns.len(),
                });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(ExportError::NonFinite {
                    table: self.name.clone(),
                    column: self.columns[j].name.clone(),
                });
            }
        }
        Ok(())
    }

    fn cell(&self, j: usize, v: f64) -> String {
        if self.columns[j].integer && v.fract() == 0.0 && v.abs() < 1e15 {
            format!("{}", v as i64)
        } else {
            format_float(v)
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), ExportError> {
        self.check()?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.columns.iter().map(Column::header))?;
        for row in &self.rows {
            w.write_record(row.iter().enumerate().map(|(j, v)| self.cell(j, *v)))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table written by [`Table::write_csv`].
    pub fn read_csv<R: Read>(name: &str, input: R) -> Result<Self, ExportError> {
        let mut r = csv::Reader::from_reader(input);
        let columns = r
            .headers()?
            .iter()
            .map(parse_header)
            .collect::<Result<Vec<_>, _>>()?;
        let mut table = Table::new(name, columns);
        for rec in r.records() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| ExportError::Malformed(format!("`{s}`: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        for (j, c) in table.columns.iter_mut().enumerate() {
            c.integer = c.unit == "1" && table.rows.iter().all(|r| r[j].fract() == 0.0);
        }
        Ok(table)
    }

    fn to_json(&self) -> Result<JsonTable, ExportError> {
        self.check()?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| RawValue::from_string(self.cell(j, *v)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(JsonTable {
            name: self.name.clone(),
            columns: self.columns.clone(),
            rows,
        })
    }
}

fn parse_header(h: &str) -> Result<Column, ExportError> {
    let (name, rest) = h
        .split_once(" [")
        .ok_or_else(|| ExportError::Malformed(format!("header `{h}` lacks a unit")))?;
    let unit = rest
        .strip_suffix(']')
        .ok_or_else(|| ExportError::Malformed(format!("header `{h}` lacks a closing bracket")))?;
    Ok(Column::real(name, unit))
}

/// Shortest exponent form carrying 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct JsonTable {
    name: String,
    columns: Vec<Column>,
    rows: Vec<Vec<Box<RawValue>>>,
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    schema_version: u32,
    experiment: &'a str,
    tables: Vec<JsonTable>,
}

/// Writes all tables of one experiment as a single JSON document.
pub fn write_json<W: Write>(experiment: &str, tables: &[Table], mut out: W) -> Result<(), ExportError> {
    let doc = JsonDocument {
        schema_version: SCHEMA_VERSION,
        experiment,
        tables: tables.iter().map(Table::to_json).collect::<Result<_, _>>()?,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Reads the tables back out of a document written by [`write_json`].
pub fn read_json<R: Read>(input: R) -> Result<Vec<Table>, ExportError> {
    let doc: serde_json::Value = serde_json::from_reader(input)?;
    let malformed = |m: &str| ExportError::Malformed(m.into());
    if doc.get("schema_version").and_then(|v| v.as_u64()) != Some(SCHEMA_VERSION as u64) {
        return Err(malformed("missing or unsupported schema_version"));
    }
    let tables = doc.get("tables").and_then(|t| t.as_array()).ok_or_else(|| malformed("no tables"))?;
    tables
        .iter()
        .map(|t| {
            let name = t.get("name").and_then(|v| v.as_str()).ok_or_else(|| malformed("table without name"))?;
            let columns = t
                .get("columns")
                .and_then(|v| v.as_array())
                .ok_or_else(|| malformed("table without columns"))?
                .iter()
                .map(|c| {
                    let field = |k: &str| c.get(k).and_then(|v| v.as_str()).map(str::to_owned);
                    match (field("name"), field("unit")) {
                        (Some(n), Some(u)) => Ok(Column {
                            integer: false,
                            name: n,
                            unit: u,
                        }),
                        _ => Err(malformed("column without name or unit")),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut table = Table::new(name, columns);
            for row in t.get("rows").and_then(|v| v.as_array()).ok_or_else(|| malformed("table without rows"))? {
                let row = row
                    .as_array()
                    .ok_or_else(|| malformed("row is not an array"))?
                    .iter()
                    .map(|v| v.as_f64().ok_or_else(|| malformed("non-numeric cell")))
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(row);
            }
            Ok(table)
        })
        .collect()
}
