// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Leakage of calibrated Hanning π pulses on a three-level transmon as the
//! DRAG coefficient varies.

use std::f64::consts::PI;

use fastadiabatic::dynamics::{calibrate_pulse, hanning_envelope, stark_shift, LevelModel, TargetRotation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta = -2.0 * PI;
    let t_p = 2.5 * 2.0 * PI / delta.abs();
    let shape = hanning_envelope(1001, t_p, 1.0);
    for d in [0.0, -0.5, -1.0, -1.2] {
        let cal = calibrate_pulse(&shape, t_p, d, delta, TargetRotation::PiPulse, LevelModel::ThreeLevel)?;
        println!(
            "D = {d:+.2}: err2 {:.3e}, qubit error {:.1e}, detuning {:+.4} (peak Stark shift {:+.4})",
            cal.err2_avg,
            cal.qubit_subspace_error,
            cal.detuning,
            stark_shift(2.0 * cal.amplitude / t_p, d, delta)?
        );
    }
    Ok(())
}
