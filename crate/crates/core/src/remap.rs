// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Nonlinear time remapping between a constant-frequency frame τ and lab time.
//!
//! With `ω_frame dτ = ω(t) dt` and `ω = 2h_x / sin θ`, lab time follows from
//! `dt/dτ = ω_frame sin θ / (2 h_x)`. Choosing `ω_frame = 2h_x` gives
//! `dt/dτ = sin θ`. A waveform that is optimal at constant frequency in τ stays
//! optimal for arbitrary excursions once mapped back to lab time.

use serde::{Deserialize, Serialize};

use crate::adiabatic::WaveformFamily;
use crate::error::{invalid, Error, Result};
use crate::interp::CubicHermite;
use crate::quadrature;
use crate::trajectory::{Frame, SampledTrajectory};
use crate::waveform::{BasisMode, FourierWaveform};

/// Default τ-grid density for remapped problems.
pub const DEFAULT_TAU_SAMPLES: usize = 4097;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemapParams {
    pub h_x: f64,
    /// Precession frequency of the τ frame; `None` means `2 h_x`.
    pub omega_frame: Option<f64>,
}

impl Default for RemapParams {
    fn default() -> Self {
        Self {
            h_x: 1.0,
            omega_frame: None,
        }
    }
}

impl RemapParams {
    pub fn omega_frame(&self) -> f64 {
        self.omega_frame.unwrap_or(2.0 * self.h_x)
    }

    /// `dt/dτ = rate_scale · sin θ`.
    fn rate_scale(&self) -> f64 {
        self.omega_frame() / (2.0 * self.h_x)
    }

    fn validate(&self) -> Result<()> {
        if !(self.h_x > 0.0) || !self.h_x.is_finite() {
            return invalid("h_x must be positive");
        }
        if !(self.omega_frame() > 0.0) || !self.omega_frame().is_finite() {
            return invalid("frame frequency must be positive");
        }
        Ok(())
    }
}

/// Tabulated `t(τ)` and `θ(τ)` on a uniform τ grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemapTable {
    pub tau: Vec<f64>,
    pub t_of_tau: Vec<f64>,
    pub theta_of_tau: Vec<f64>,
    pub dtheta_dtau: Vec<f64>,
    pub params: RemapParams,
}

impl RemapTable {
    pub fn tau_p(&self) -> f64 {
        *self.tau.last().unwrap()
    }

    /// Lab duration `t(τ_p)`.
    pub fn t_p(&self) -> f64 {
        *self.t_of_tau.last().unwrap()
    }

    /// `dt/dτ` at each τ sample.
    pub fn time_rate(&self) -> Vec<f64> {
        let c = self.params.rate_scale();
        self.theta_of_tau.iter().map(|th| c * th.sin()).collect()
    }

    /// The constant-frequency (τ-frame) view of the same control.
    pub fn tau_trajectory(&self) -> Result<SampledTrajectory> {
        SampledTrajectory::new(
            Frame::ConstantFrequency {
                omega: self.params.omega_frame(),
            },
            self.tau_p(),
            self.theta_of_tau.clone(),
            self.dtheta_dtau.clone(),
        )
    }

    fn interpolant(&self) -> Result<CubicHermite> {
        let slopes: Vec<f64> = self
            .dtheta_dtau
            .iter()
            .zip(self.time_rate())
            .map(|(d, r)| d / r)
            .collect();
        CubicHermite::new(self.t_of_tau.clone(), self.theta_of_tau.clone(), Some(slopes), true)
    }
}

/// Builds `t(τ) = ∫₀^τ sin θ dτ'` (scaled for a non-default frame) with dθ/dτ
/// estimated from the samples.
pub fn build_remap(theta_of_tau: &[f64], tau_p: f64) -> Result<RemapTable> {
    build_remap_with(theta_of_tau, None, tau_p, RemapParams::default())
}

/// Like [`build_remap`] with explicit slopes and frame parameters.
pub fn build_remap_with(
    theta_of_tau: &[f64],
    dtheta_dtau: Option<&[f64]>,
    tau_p: f64,
    params: RemapParams,
) -> Result<RemapTable> {
    params.validate()?;
    let n = theta_of_tau.len();
    if n < 2 {
        return invalid("remap needs at least two samples");
    }
    if !(tau_p > 0.0) || !tau_p.is_finite() {
        return invalid(format!("τ duration must be positive, got {tau_p}"));
    }
    for (index, &theta) in theta_of_tau.iter().enumerate() {
        if !theta.is_finite() {
            return invalid("θ samples must be finite");
        }
        if theta <= 0.0 || theta >= std::f64::consts::PI {
            return Err(Error::Pole { index, theta });
        }
    }
    let dtau = tau_p / (n - 1) as f64;
    let slopes = match dtheta_dtau {
        Some(s) if s.len() == n => s.to_vec(),
        Some(_) => return invalid("slope vector length differs from θ samples"),
        None => quadrature::derivative(theta_of_tau, dtau),
    };
    let c = params.rate_scale();
    let rate: Vec<f64> = theta_of_tau.iter().map(|th| c * th.sin()).collect();
    let rate_deriv: Vec<f64> = theta_of_tau
        .iter()
        .zip(&slopes)
        .map(|(th, d)| c * th.cos() * d)
        .collect();
    let t_of_tau = quadrature::cumulative_trapezoid_corrected(&rate, &rate_deriv, dtau);
    if t_of_tau.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::Numerical("t(τ) is not strictly increasing".into()));
    }
    Ok(RemapTable {
        tau: quadrature::linspace(0.0, tau_p, n),
        t_of_tau,
        theta_of_tau: theta_of_tau.to_vec(),
        dtheta_dtau: slopes,
        params,
    })
}

/// θ and dθ/dt at arbitrary lab times inside `[0, t(τ_p)]`.
pub fn invert_remap_at(table: &RemapTable, times: &[f64]) -> Result<Vec<(f64, f64)>> {
    let h = table.interpolant()?;
    times.iter().map(|&t| h.eval(t)).collect()
}

/// Lab-frame trajectory on `n_samples` uniform times over `[0, t(τ_p)]`.
pub fn invert_remap(table: &RemapTable, n_samples: usize) -> Result<SampledTrajectory> {
    if n_samples < 2 {
        return invalid("need at least two lab samples");
    }
    let times = quadrature::linspace(0.0, table.t_p(), n_samples);
    let (theta, rate): (Vec<f64>, Vec<f64>) = invert_remap_at(table, &times)?.into_iter().unzip();
    SampledTrajectory::new(Frame::Lab { h_x: table.params.h_x }, table.t_p(), theta, rate)
}

/// A Fourier shape defined in the τ frame and stretched so that its lab
/// duration equals the requested `t_p`.
#[derive(Debug, Clone)]
pub struct RemappedFamily {
    shape: FourierWaveform,
    params: RemapParams,
    tau_samples: usize,
    /// Lab duration per unit τ duration.
    kappa: f64,
}

impl RemappedFamily {
    pub fn new(
        mode: BasisMode,
        shape: &[f64],
        theta_i: f64,
        theta_f: f64,
        params: RemapParams,
    ) -> Result<Self> {
        params.validate()?;
        let shape = FourierWaveform::from_shape(mode, shape, 1.0, theta_i, theta_f)?;
        let (theta, _) = shape.sample(DEFAULT_TAU_SAMPLES);
        if let Some((index, &theta)) = theta
            .iter()
            .enumerate()
            .find(|(_, t)| **t <= 0.0 || **t >= std::f64::consts::PI)
        {
            return Err(Error::Pole { index, theta });
        }
        let c = params.rate_scale();
        let rate: Vec<f64> = theta.iter().map(|t| c * t.sin()).collect();
        let kappa = quadrature::integrate(&rate, 1.0 / (DEFAULT_TAU_SAMPLES - 1) as f64);
        Ok(Self {
            shape,
            params,
            tau_samples: DEFAULT_TAU_SAMPLES,
            kappa,
        })
    }

    pub fn with_tau_samples(mut self, n: usize) -> Self {
        self.tau_samples = n.max(3);
        self
    }

    /// Ratio of lab duration to τ duration.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn params(&self) -> RemapParams {
        self.params
    }

    /// τ-frame waveform whose lab duration is `t_p`.
    pub fn tau_waveform(&self, t_p: f64) -> Result<FourierWaveform> {
        self.shape.with_duration(t_p / self.kappa)
    }

    pub fn table(&self, t_p: f64) -> Result<RemapTable> {
        let w = self.tau_waveform(t_p)?;
        let n = self.tau_samples;
        let (theta, rate) = w.sample(n);
        build_remap_with(&theta, Some(&rate), w.t_p(), self.params)
    }

    /// Constant-frequency view with τ samples.
    pub fn tau_trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        let w = self.tau_waveform(t_p)?;
        SampledTrajectory::from_waveform(
            &w,
            Frame::ConstantFrequency {
                omega: self.params.omega_frame(),
            },
            n_samples,
        )
    }
}

impl WaveformFamily for RemappedFamily {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        invert_remap(&self.table(t_p)?, n_samples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adiabatic::geometric_error;
    use std::f64::consts::PI;

    #[test]
    fn identity_for_right_angle() {
        let t = build_remap(&[PI / 2.0; 101], 2.0).unwrap();
        for (a, b) in t.t_of_tau.iter().zip(&t.tau) {
            assert!((a - b).abs() < 1e-14);
        }
        let tr = invert_remap(&t, 50).unwrap();
        assert!(tr.theta().iter().all(|th| (th - PI / 2.0).abs() < 1e-14));
    }

    #[test]
    fn constant_angle_is_linear() {
        let c = 0.4f64;
        let t = build_remap(&[c; 65], 3.0).unwrap();
        assert!((t.t_p() - 3.0 * c.sin()).abs() < 1e-13);
    }

    #[test]
    fn rejects_poles() {
        assert!(matches!(build_remap(&[0.1, 0.0, 0.1], 1.0), Err(Error::Pole { index: 1, .. })));
        let t = build_remap(&[1.0; 8], 1.0).unwrap();
        assert!(invert_remap_at(&t, &[2.0]).is_err());
    }

    #[test]
    fn round_trip() {
        let n = 4096;
        let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.086, -0.086], 3.0, 3.0419, 0.0997)
            .unwrap();
        let (theta, rate) = w.sample(n);
        let table = build_remap_with(&theta, Some(&rate), 3.0, RemapParams::default()).unwrap();
        let back = invert_remap_at(&table, &table.t_of_tau).unwrap();
        let dev = back
            .iter()
            .zip(&theta)
            .map(|((a, _), b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev}");
    }

    #[test]
    fn lab_rate_compensates_small_sine() {
        let n = 2049;
        let theta = quadrature::linspace(0.2, 1.2, n);
        let table = build_remap_with(&theta, Some(&vec![1.0; n]), 1.0, RemapParams::default()).unwrap();
        let tr = invert_remap(&table, 1025).unwrap();
        for (th, d) in tr.theta().iter().zip(tr.dtheta_dt()) {
            assert!((d * th.sin() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn frame_equivalence() {
        let fam = RemappedFamily::new(
            BasisMode::DerivativeBasis,
            &[1.086, -0.086],
            1.0f64.atan2(-10.0),
            1.0f64.atan2(10.0),
            RemapParams::default(),
        )
        .unwrap();
        let lab = geometric_error(&fam.trajectory(1.5 * PI, 8193).unwrap());
        let tau = geometric_error(&fam.tau_trajectory(1.5 * PI, 8193).unwrap());
        assert!((lab.p_e - tau.p_e).abs() < 1e-8, "{} {}", lab.p_e, tau.p_e);
    }
}
