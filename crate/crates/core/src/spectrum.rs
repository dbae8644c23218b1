// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Power spectral density of sampled pulses, evaluated at arbitrary
//! frequencies by direct quadrature of the Fourier integral.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadrature;

/// `S(ω) = |∫ f(t) e^{-iωt} dt|²` on a frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensity {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
}

impl SpectralDensity {
    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    /// Trapezoid integral of `S` over the grid.
    pub fn integral(&self) -> f64 {
        quadrature::trapezoid_nonuniform(&self.omegas, &self.values)
    }
}

fn check_signal<T, F: Fn(&T) -> bool>(signal: &[T], finite: F, dt: f64) -> Result<()> {
    if signal.is_empty() {
        return invalid("signal has no samples");
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return invalid(format!("sample spacing must be positive, got {dt}"));
    }
    if !signal.iter().all(finite) {
        return invalid("signal contains non-finite samples");
    }
    Ok(())
}

/// `∫ f(t) e^{-iωt} dt` for a real signal sampled at `t_k = k·dt`.
pub fn fourier_integral(signal: &[f64], dt: f64, omega: f64) -> Complex64 {
    let w = quadrature::weights(signal.len(), dt);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (f, wk)) in signal.iter().zip(&w).enumerate() {
        let (s, c) = (omega * k as f64 * dt).sin_cos();
        acc += Complex64::new(c, -s) * (f * wk);
    }
    acc
}

/// `∫ f(t) e^{-iωt} dt` for a complex signal; `omega` may be negative.
pub fn fourier_integral_complex(signal: &[Complex64], dt: f64, omega: f64) -> Complex64 {
    let w = quadrature::weights(signal.len(), dt);
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (f, wk)) in signal.iter().zip(&w).enumerate() {
        let (s, c) = (omega * k as f64 * dt).sin_cos();
        acc += Complex64::new(c, -s) * f * *wk;
    }
    acc
}

/// Power spectral density of a real signal sampled uniformly on `[0, t_p]`
/// with spacing `dt`, at each frequency in `omegas` (all nonnegative).
pub fn psd(signal: &[f64], dt: f64, omegas: &[f64]) -> Result<SpectralDensity> {
    check_signal(signal, |v| v.is_finite(), dt)?;
    if omegas.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return invalid("frequency grid must be finite and nonnegative");
    }
    let values = omegas
        .iter()
        .map(|w| fourier_integral(signal, dt, *w).norm_sqr())
        .collect();
    Ok(SpectralDensity {
        omegas: omegas.to_vec(),
        values,
    })
}

/// PSD of a square pulse of height `delta_theta / t_p`:
/// `4 Δθ² sin²(ω t_p/2) / (ω t_p)²`.
pub fn rectangular_psd(delta_theta: f64, t_p: f64, omega: f64) -> f64 {
    let x = omega * t_p / (2.0 * PI);
    let s = sinc_pi(x);
    delta_theta * delta_theta * s * s
}

/// PSD of the Hanning window `(Δθ/t_p)(1 - cos 2πt/t_p)`:
/// the square-pulse PSD divided by `|1 - (ω t_p / 2π)²|²`.
pub fn hanning_psd(delta_theta: f64, t_p: f64, omega: f64) -> f64 {
    let x = omega * t_p / (2.0 * PI);
    // Near x = 1 use sin(πx)/(1-x) = π sinc(1-x) to remove the 0/0.
    let amp = if (1.0 - x).abs() < 0.5 {
        sinc_pi(1.0 - x) / (x * (1.0 + x))
    } else {
        sinc_pi(x) / (1.0 - x * x)
    };
    delta_theta * delta_theta * amp * amp
}

/// Normalised `sin(πx)/(πx)`.
fn sinc_pi(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - (PI * x).powi(2) / 6.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// `∫ S(ω) dω` (or `∫ S d ln ω` when `log_measure` is set) from `omega_lo`
/// up to `omega_hi`, by the trapezoid rule on `n` log-spaced frequencies.
pub fn integrated_psd(
    signal: &[f64],
    dt: f64,
    omega_lo: f64,
    omega_hi: f64,
    n: usize,
    log_measure: bool,
) -> Result<f64> {
    if !(omega_lo > 0.0) || !(omega_hi > omega_lo) || n < 2 {
        return invalid("integration band must satisfy 0 < lo < hi with n >= 2");
    }
    let grid = quadrature::geomspace(omega_lo, omega_hi, n);
    let s = psd(signal, dt, &grid)?;
    Ok(integrate_band(&grid, &s.values, log_measure))
}

pub(crate) fn integrate_band(grid: &[f64], values: &[f64], log_measure: bool) -> f64 {
    if log_measure {
        let logs: Vec<f64> = grid.iter().map(|w| w.ln()).collect();
        quadrature::trapezoid_nonuniform(&logs, values)
    } else {
        quadrature::trapezoid_nonuniform(grid, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn samples(n: usize, t_p: f64, f: impl Fn(f64) -> f64) -> (Vec<f64>, f64) {
        let dt = t_p / (n - 1) as f64;
        ((0..n).map(|k| f(k as f64 * dt)).collect(), dt)
    }

    #[test]
    fn rectangular_matches_closed_form() {
        let (t_p, d) = (1.3, 0.7);
        let (f, dt) = samples(1025, t_p, |_| d / t_p);
        for j in 1..200 {
            let x = 0.05 * j as f64;
            if (x - x.round()).abs() < 0.02 {
                continue;
            }
            let w = 2.0 * PI * x / t_p;
            let num = psd(&f, dt, &[w]).unwrap().values[0];
            let exact = rectangular_psd(d, t_p, w);
            assert!((num / exact - 1.0).abs() < 1e-6, "x={x}");
        }
    }

    #[test]
    fn hanning_has_first_zero_at_two_cycles() {
        let t_p = 2.0;
        let (f, dt) = samples(1025, t_p, |t| (1.0 - (2.0 * PI * t / t_p).cos()) / t_p);
        let s = psd(&f, dt, &[0.0, 2.0 * PI / t_p, 4.0 * PI / t_p]).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert!((s.values[1] - hanning_psd(1.0, t_p, PI)).abs() < 1e-10);
        assert!(s.values[2] < 1e-20);
        assert!((hanning_psd(1.0, 1.0, 2.0 * PI) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn zero_signal() {
        let s = psd(&[0.0; 64], 0.1, &[0.0, 1.0, 5.0]).unwrap();
        assert!(s.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rejects_bad_grid_or_signal() {
        assert!(psd(&[1.0; 8], 0.1, &[-1.0]).is_err());
        assert!(psd(&[1.0, f64::NAN], 0.1, &[1.0]).is_err());
    }

    #[test]
    fn parseval() {
        let t_p = 1.0;
        let (f, dt) = samples(513, t_p, |t| (1.0 - (2.0 * PI * t).cos()) + 0.3 * (PI * t).sin());
        let energy = quadrature::integrate(&f.iter().map(|v| v * v).collect::<Vec<_>>(), dt);
        let grid = quadrature::linspace(0.0, 400.0, 20001);
        let s = psd(&f, dt, &grid).unwrap();
        // S is even in ω for real f, so ∫_{-∞}^{∞} S dω/2π = 2 ∫_0^∞ S dω/2π.
        let total = 2.0 * s.integral() / (2.0 * PI);
        assert!((total / energy - 1.0).abs() < 0.01, "{total} vs {energy}");
    }

    proptest! {
        #[test]
        fn translation_invariance(shift in 0usize..64, w in 0.0f64..30.0) {
            let (base, dt) = samples(129, 1.0, |t| (3.0 * t).sin() * (PI * t).sin().powi(4));
            let mut padded = vec![0.0; 64];
            padded.extend_from_slice(&base);
            padded.extend(vec![0.0; 64]);
            let mut shifted = vec![0.0; shift];
            shifted.extend_from_slice(&base);
            shifted.extend(vec![0.0; 128 - shift]);
            let a = psd(&padded, dt, &[w]).unwrap().values[0];
            let b = psd(&shifted, dt, &[w]).unwrap().values[0];
            prop_assert!((a - b).abs() < 1e-7 * (1.0 + a));
        }
    }
}
