// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Spectral densities of the rectangular and Hanning windows against their
//! closed forms, plus out-of-band weight above the cutoff.

use std::f64::consts::PI;

use fastadiabatic::quadrature::linspace;
use fastadiabatic::spectrum::{hanning_psd, integrated_psd, psd, rectangular_psd};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4097;
    let dt = 1.0 / (n - 1) as f64;
    let rect = vec![1.0; n];
    let hann: Vec<f64> = linspace(0.0, 1.0, n).iter().map(|t| 1.0 - (2.0 * PI * t).cos()).collect();

    println!("{:>8} {:>14} {:>14} {:>14} {:>14}", "ωt_p/2π", "S_rect", "closed form", "S_hann", "closed form");
    for x in [0.25, 0.5, 1.5, 2.5, 3.5, 5.5] {
        let w = 2.0 * PI * x;
        let sr = psd(&rect, dt, &[w])?.values[0];
        let sh = psd(&hann, dt, &[w])?.values[0];
        println!(
            "{x:>8.2} {sr:>14.6e} {:>14.6e} {sh:>14.6e} {:>14.6e}",
            rectangular_psd(1.0, 1.0, w),
            hanning_psd(1.0, 1.0, w)
        );
    }
    let lo = 2.0 * PI * 2.3;
    println!("out of band above 2.3: rectangular {:.3e}, Hanning {:.3e}",
        integrated_psd(&rect, dt, lo, 40.0 * lo, 4000, false)?,
        integrated_psd(&hann, dt, lo, 40.0 * lo, 4000, false)?);
    Ok(())
}
