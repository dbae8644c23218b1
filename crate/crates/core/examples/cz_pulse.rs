// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Out-and-back pulse toward the anticrossing, optimised against exact
//! dynamics over a window of pulse times.

use std::f64::consts::PI;

use fastadiabatic::optimize::{optimize_cz_pulse, SearchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (theta_i, theta_f) = (0.1, 0.55 * PI / 2.0);
    let options = SearchOptions { max_evaluations: 600, ..SearchOptions::default() };
    let r = optimize_cz_pulse(theta_i, theta_f, 3, 0.0, (1.0 * PI, 2.5 * PI, 11), 1024, options)?;
    println!("λ' (rad): {:?}", r.coefficients);
    println!("largest P_e over [1, 2.5] T_x: {:.3e} after {} evaluations", r.objective_value, r.evaluations);
    Ok(())
}
