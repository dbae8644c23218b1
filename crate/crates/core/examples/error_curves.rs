// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Error versus pulse time for the Hanning and optimised two-term shapes,
//! linearised and exact, at constant precession frequency.

use std::f64::consts::PI;

use fastadiabatic::adiabatic::{error_curve, Evaluator, Sampling, ScaledWaveform};
use fastadiabatic::quadrature::linspace;
use fastadiabatic::trajectory::Frame;
use fastadiabatic::waveform::{BasisMode, FourierWaveform};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let frame = Frame::ConstantFrequency { omega: 2.0 };
    let grid: Vec<f64> = linspace(1.0, 5.0, 9).iter().map(|x| x * PI).collect();
    for (name, shape) in [("hanning", vec![1.0]), ("two-term", vec![1.0866, -0.0866])] {
        let family = ScaledWaveform {
            waveform: FourierWaveform::from_shape(BasisMode::DerivativeBasis, &shape, 1.0, 0.7, 0.8)?,
            frame,
        };
        let lin = error_curve(&family, &grid, Evaluator::Linearized, Sampling::default())?;
        let exact = error_curve(&family, &grid, Evaluator::Exact, Sampling::default())?;
        println!("{name}");
        for (a, b) in lin.points.iter().zip(&exact.points) {
            println!("  t_p = {:.2} T_x: linearized {:.3e}, exact {:.3e}", a.t_p / PI, a.p_e, b.p_e);
        }
    }
    Ok(())
}
