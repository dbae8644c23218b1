// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! The moving-frame amplitude ODE and the direct 2×2 propagator agree on a
//! lab-frame trajectory; the linearised theory tracks both at small error.

use std::f64::consts::PI;

use fastadiabatic::adiabatic::{geometric_error, geometric_error_corrected};
use fastadiabatic::dynamics::{evolve_two_level_direct, evolve_two_level_exact};
use fastadiabatic::trajectory::{Frame, SampledTrajectory};
use fastadiabatic::waveform::{BasisMode, FourierWaveform};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t_p in [0.5, 1.0, 2.0] {
        let w = FourierWaveform::from_shape(BasisMode::ThetaBasis, &[0.5, -0.1, 0.0], t_p * PI, 0.6, 0.9)?;
        let traj = SampledTrajectory::from_waveform(&w, Frame::Lab { h_x: 1.0 }, 4097)?;
        let direct = evolve_two_level_direct(&traj)?;
        println!(
            "t_p = {t_p} T_x: ODE {:.6e}, propagator {:.6e} (drift {:.1e}), linearized {:.6e}, corrected {:.6e}",
            evolve_two_level_exact(&traj)?.p_e,
            direct.p_e,
            direct.unitarity_drift,
            geometric_error(&traj).p_e,
            geometric_error_corrected(&traj).p_e
        );
    }
    Ok(())
}
