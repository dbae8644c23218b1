// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fastadiabatic::experiment::{run, ExperimentKind, Format, Overrides, RunConfig, EXIT_IO, EXIT_VALIDATION};

/// Synthesize and evaluate fast-adiabatic control waveforms.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// psd-windows, error-curve, lz-sweep, cz-pulse, table1 or drag-sweep
    #[arg(value_parser = str::parse::<ExperimentKind>)]
    experiment: ExperimentKind,
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `output_path`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json (overrides `format`).
    #[arg(long, value_parser = str::parse::<Format>)]
    format: Option<Format>,
    /// Seed for randomized search starts (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let overrides = Overrides {
        output_path: cli.out,
        format: cli.format,
        seed: cli.seed,
    };
    let outcome = RunConfig::load(cli.experiment, &cli.config, overrides)
        .map_err(Into::into)
        .and_then(|config| run(&config));
    match outcome {
        Ok(manifest) => match serde_json::to_string_pretty(&manifest) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_IO as u8)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
