// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Linear ramps through the anticrossing approach the Landau-Zener formula
//! as the ramp range grows.

use fastadiabatic::adiabatic::{converged_error, landau_zener_error, landau_zener_time, Evaluator, Sampling};
use fastadiabatic::quadrature::linspace;
use fastadiabatic::trajectory::SampledTrajectory;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rate = 0.341;
    let formula = landau_zener_error(1.0, rate)?;
    for span in [5.0, 10.0, 15.0, 20.0] {
        let family = |t_p: f64, n: usize| {
            SampledTrajectory::from_h_z(1.0, t_p, &linspace(-span, span, n), &vec![rate; n])
        };
        let p = converged_error(&family, 2.0 * span / rate, Evaluator::Exact, Sampling::default())?;
        println!("H_z ±{span:>4} h_x: P_e = {:.4e} (formula {formula:.4e}, {} samples)", p.p_e, p.n_samples);
    }
    println!(
        "sweep time for P_e = 1e-4 over ±10 h_x: {:.2} T_x",
        landau_zener_time(1.0, 20.0, 1e-4)? / std::f64::consts::PI
    );
    Ok(())
}
