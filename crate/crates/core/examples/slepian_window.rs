// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! The Slepian window concentrates more energy below the cutoff than the
//! Hanning or rectangular windows of the same length.

use fastadiabatic::window::{hanning, rectangular, slepian_window, spectral_concentration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 256;
    for nw in [1.5, 2.3, 3.0] {
        let w = nw / n as f64;
        let s = slepian_window(n, nw)?;
        println!(
            "NW = {nw}: in-band fraction slepian {:.9}, hanning {:.9}, rectangular {:.9}",
            spectral_concentration(&s, w),
            spectral_concentration(&hanning(n), w),
            spectral_concentration(&rectangular(n), w)
        );
    }
    Ok(())
}
