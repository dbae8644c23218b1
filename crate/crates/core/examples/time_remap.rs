// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Remapping a constant-frequency shape across the anticrossing, and the
//! identical error seen from the lab and τ frames.

use std::f64::consts::PI;

use fastadiabatic::adiabatic::{geometric_error, WaveformFamily};
use fastadiabatic::dynamics::evolve_two_level_exact;
use fastadiabatic::remap::{RemapParams, RemappedFamily};
use fastadiabatic::waveform::BasisMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (theta_i, theta_f) = (1.0f64.atan2(-10.0), 1.0f64.atan2(10.0));
    let family = RemappedFamily::new(BasisMode::DerivativeBasis, &[1.086, -0.086], theta_i, theta_f, RemapParams::default())?;
    println!("lab time per unit τ: {:.4}", family.kappa());
    for x in [0.8, 0.85, 1.0, 1.25, 1.5, 2.0] {
        let lab = family.trajectory(x * PI, 8193)?;
        let tau = family.tau_trajectory(x * PI, 8193)?;
        println!(
            "t_p = {x:.2} T_x: linearized lab {:.4e}, τ frame {:.4e}, exact {:.4e}",
            geometric_error(&lab).p_e,
            geometric_error(&tau).p_e,
            evolve_two_level_exact(&lab)?.p_e
        );
    }
    Ok(())
}
