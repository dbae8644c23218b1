// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Fourier coefficients that minimise spectral weight above a cutoff, with
//! both frequency weightings of the out-of-band integral.

use fastadiabatic::optimize::{optimize_coefficients, Objective, ObjectiveKind, SearchOptions};
use fastadiabatic::waveform::BasisMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (cutoff, log_measure) in [(2.3, false), (2.156, true)] {
        let objective = Objective {
            kind: ObjectiveKind::IntegratedPsdAboveCutoff { cutoff, log_measure },
            convolution_sigma: 0.0,
            problem: None,
        };
        println!("cutoff {cutoff}, log weighting {log_measure}");
        for n_m in [2, 4, 10] {
            let options = SearchOptions { max_evaluations: 20000, ..SearchOptions::default() };
            let r = optimize_coefficients(n_m, BasisMode::DerivativeBasis, &objective, 1.0, options)?;
            let shown: Vec<String> = r.coefficients.iter().map(|c| format!("{c:+.4}")).collect();
            println!("  n_m = {n_m:>2}: {}  (objective {:.3e})", shown.join(" "), r.objective_value);
        }
    }
    Ok(())
}
