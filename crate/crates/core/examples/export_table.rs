// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Running an experiment from a configuration string and writing its tables.

use fastadiabatic::experiment::{compute, ExperimentKind, Overrides, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "[parameters]\nwindow = \"rectangular\"\nn_points = 5\nt_p_over_tx_min = 1.0\nt_p_over_tx_max = 3.0\n";
    let config = RunConfig::from_toml(ExperimentKind::ErrorCurve, text, Overrides::default())?;
    for table in compute(&config)? {
        table.write_csv(std::io::stdout())?;
    }
    Ok(())
}
