// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment drivers behind the command-line tool.
//!
//! A run loads and validates a [`RunConfig`], computes one or more
//! [`Table`]s, writes them in the requested format and finishes with a
//! `manifest.json` describing the run.

mod config;
mod drivers;
mod export;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

pub use config::*;
pub use export::{format_float, read_json, write_json, Column, ExportError, Table, SCHEMA_VERSION};

/// Exit status for a rejected configuration or input.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status when a numerical module fails.
pub const EXIT_NUMERICAL: i32 = 3;
/// Exit status for I/O problems writing results.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Module(#[from] crate::error::Error),
    #[error("cannot write results: {0}")]
    Export(#[from] ExportError),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Module(crate::error::Error::InvalidInput(_)) => EXIT_VALIDATION,
            RunError::Module(_) => EXIT_NUMERICAL,
            RunError::Export(ExportError::NonFinite { .. }) => EXIT_NUMERICAL,
            RunError::Export(_) => EXIT_IO,
        }
    }
}

/// Summary written next to the results. Everything except the wall time is
/// a function of the configuration and seed.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub experiment: ExperimentKind,
    pub config_sha256: String,
    pub seed: u64,
    pub format: Format,
    pub parameters: Parameters,
    pub files: Vec<String>,
    pub wall_time_seconds: f64,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Computes the experiment's tables without touching the file system.
pub fn compute(config: &RunConfig) -> Result<Vec<Table>, RunError> {
    Ok(match &config.parameters {
        Parameters::PsdWindows(p) => drivers::psd_windows(p)?,
        Parameters::ErrorCurve(p) => drivers::error_curve(p)?,
        Parameters::LzSweep(p) => drivers::lz_sweep(p)?,
        Parameters::CzPulse(p) => drivers::cz_pulse(p, config.seed)?,
        Parameters::Table1(p) => drivers::table1(p, config.seed)?,
        Parameters::DragSweep(p) => drivers::drag_sweep(p)?,
    })
}

/// Writes tables under `dir`, returning the file names.
pub fn write_tables(dir: &Path, experiment: ExperimentKind, format: Format, tables: &[Table]) -> Result<Vec<String>, RunError> {
    fs::create_dir_all(dir).map_err(ExportError::from)?;
    let mut files = Vec::new();
    match format {
        Format::Csv => {
            for t in tables {
                let name = format!("{}.csv", t.name);
                t.write_csv(fs::File::create(dir.join(&name)).map_err(ExportError::from)?)?;
                files.push(name);
            }
        }
        Format::Json => {
            let name = format!("{}.json", experiment.name());
            let f = fs::File::create(dir.join(&name)).map_err(ExportError::from)?;
            write_json(experiment.name(), tables, std::io::BufWriter::new(f))?;
            files.push(name);
        }
    }
    Ok(files)
}

/// Runs one validated configuration end to end.
pub fn run(config: &RunConfig) -> Result<Manifest, RunError> {
    let start = Instant::now();
    let tables = compute(config)?;
    let files = write_tables(&config.output_path, config.experiment, config.format, &tables)?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        experiment: config.experiment,
        config_sha256: config.config_sha256.clone(),
        seed: config.seed,
        format: config.format,
        parameters: config.parameters.clone(),
        files,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(ExportError::from)?;
    fs::write(manifest_path(&config.output_path), text + "\n").map_err(ExportError::from)?;
    Ok(manifest)
}

pub fn manifest_path(dir: &Path) -> PathBuf {
    dir.join(MANIFEST_FILE)
}
