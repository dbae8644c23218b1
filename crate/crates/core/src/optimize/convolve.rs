// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use crate::adiabatic::WaveformFamily;
use crate::error::{invalid, Result};
use crate::trajectory::SampledTrajectory;

/// Gaussian kernel of width `sigma` sampled at spacing `dt`, truncated at
/// `±m·dt` with `m = round(5σ/dt)` and scaled so that `Σ g_j dt = 1`.
pub fn gaussian_kernel(sigma: f64, dt: f64) -> Vec<f64> {
    if sigma <= 0.0 {
        return vec![1.0 / dt];
    }
    let m = half_width(sigma, dt);
    let raw: Vec<f64> = (-(m as i64)..=m as i64)
        .map(|j| (-0.5 * (j as f64 * dt / sigma).powi(2)).exp())
        .collect();
    let total: f64 = raw.iter().sum::<f64>() * dt;
    raw.into_iter().map(|g| g / total).collect()
}

/// Number of samples the kernel extends on each side.
pub fn half_width(sigma: f64, dt: f64) -> usize {
    if sigma <= 0.0 {
        0
    } else {
        (5.0 * sigma / dt).round() as usize
    }
}

/// Convolves uniformly spaced samples with a unit-area Gaussian.
///
/// The signal is extended by its endpoint values so a constant stays
/// constant, and the output grows by the kernel half-width `m` on each side
/// (length `n + 2m`), mirroring the extra time rounding adds to a pulse.
pub fn convolve_gaussian(samples: &[f64], dt: f64, sigma: f64) -> Result<Vec<f64>> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return invalid(format!("σ must be nonnegative, got {sigma}"));
    }
    if !(dt > 0.0) {
        return invalid("sample spacing must be positive");
    }
    if samples.is_empty() {
        return Ok(Vec::new());
    }
    if sigma == 0.0 {
        return Ok(samples.to_vec());
    }
    let m = half_width(sigma, dt);
    let kernel = gaussian_kernel(sigma, dt);
    let n = samples.len();
    let (first, last) = (samples[0], samples[n - 1]);
    // Padded input index p maps to original index p - 2m.
    let at = |p: isize| -> f64 {
        let i = p - 2 * m as isize;
        if i < 0 {
            first
        } else if i as usize >= n {
            last
        } else {
            samples[i as usize]
        }
    };
    Ok((0..n + 2 * m)
        .map(|out| {
            let centre = out as isize + m as isize;
            kernel
                .iter()
                .enumerate()
                .map(|(j, g)| g * at(centre + m as isize - j as isize))
                .sum::<f64>()
                * dt
        })
        .collect())
}

/// Rounds the physical control `H_z(t)` of another family with a Gaussian.
///
/// The requested `t_p` is the total duration after rounding: the inner pulse
/// is shortened by the kernel support so the rounded pulse fits exactly.
pub struct ConvolvedFamily<F> {
    pub inner: F,
    pub sigma: f64,
    pub h_x: f64,
}

impl<F: WaveformFamily> ConvolvedFamily<F> {
    /// Inner (unrounded) duration that corresponds to total duration `t_p`.
    pub fn core_duration(&self, t_p: f64, n_samples: usize) -> f64 {
        let dt = t_p / (n_samples - 1) as f64;
        t_p - 2.0 * half_width(self.sigma, dt) as f64 * dt
    }
}

impl<F: WaveformFamily> WaveformFamily for ConvolvedFamily<F> {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        if self.sigma == 0.0 {
            return self.inner.trajectory(t_p, n_samples);
        }
        let dt = t_p / (n_samples - 1) as f64;
        let m = half_width(self.sigma, dt);
        if n_samples <= 2 * m + 2 {
            return invalid("pulse too short for the requested rounding");
        }
        let core_n = n_samples - 2 * m;
        let core = self.inner.trajectory(self.core_duration(t_p, n_samples), core_n)?;
        let h_x = self.h_x;
        let dh: Vec<f64> = core
            .theta()
            .iter()
            .zip(core.dtheta_dt())
            .map(|(th, d)| -h_x * d / th.sin().powi(2))
            .collect();
        let h_z = convolve_gaussian(core.h_z(), core.dt(), self.sigma)?;
        let dh_z = convolve_gaussian(&dh, core.dt(), self.sigma)?;
        SampledTrajectory::from_h_z(h_x, t_p, &h_z, &dh_z)
    }
}
