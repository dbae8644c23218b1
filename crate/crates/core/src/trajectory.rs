// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Uniformly sampled control trajectories.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature;
use crate::waveform::FourierWaveform;

/// Smallest distance kept between θ and the poles at 0 and π.
pub const THETA_CLAMP: f64 = 1e-6;

/// Relation between θ and the precession frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Laboratory time with fixed transverse field: `ω = 2 h_x / sin θ`.
    Lab { h_x: f64 },
    /// A time frame in which the precession frequency is the constant `omega`.
    /// This is the small-angle idealisation and also the remapped τ frame.
    ConstantFrequency { omega: f64 },
}

/// θ(t), dθ/dt, H_z(t) and ω(t) on a uniform grid over `[0, t_p]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledTrajectory {
    frame: Frame,
    dt: f64,
    theta: Vec<f64>,
    dtheta_dt: Vec<f64>,
    h_z: Vec<f64>,
    omega: Vec<f64>,
    omega_rate: Vec<f64>,
    clamped: usize,
}

impl SampledTrajectory {
    /// Builds a trajectory from θ and dθ/dt samples on `[0, t_p]`.
    ///
    /// Samples closer than [`THETA_CLAMP`] to 0 or π are clamped (with a
    /// warning); negative-frequency or non-finite input is rejected.
    pub fn new(frame: Frame, t_p: f64, mut theta: Vec<f64>, dtheta_dt: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        if n < 2 {
            return invalid("a trajectory needs at least two samples");
        }
        if dtheta_dt.len() != n {
            return invalid("theta and dtheta_dt must have the same length");
        }
        if !(t_p > 0.0) || !t_p.is_finite() {
            return invalid(format!("pulse time must be positive, got {t_p}"));
        }
        if theta.iter().chain(&dtheta_dt).any(|v| !v.is_finite()) {
            return invalid("trajectory samples must be finite");
        }
        match frame {
            Frame::Lab { h_x } if !(h_x > 0.0) => {
                return invalid(format!("h_x must be positive, got {h_x}"));
            }
            Frame::ConstantFrequency { omega } if !(omega > 0.0) => {
                return invalid(format!("frame frequency must be positive, got {omega}"));
            }
            _ => {}
        }
        let mut clamped = 0;
        for th in theta.iter_mut() {
            let c = th.clamp(THETA_CLAMP, PI - THETA_CLAMP);
            if c != *th {
                clamped += 1;
                *th = c;
            }
        }
        if clamped > 0 {
            log::warn!("{clamped} trajectory samples clamped away from θ ∈ {{0, π}}");
        }
        let dt = t_p / (n - 1) as f64;
        let (h_z, omega, omega_rate) = match frame {
            Frame::Lab { h_x } => {
                let mut h_z = Vec::with_capacity(n);
                let mut om = Vec::with_capacity(n);
                let mut rate = Vec::with_capacity(n);
                for (th, d) in theta.iter().zip(&dtheta_dt) {
                    let (s, c) = th.sin_cos();
                    let w = 2.0 * h_x / s;
                    h_z.push(h_x * c / s);
                    om.push(w);
                    rate.push(-w * c / s * d);
                }
                (h_z, om, rate)
            }
            Frame::ConstantFrequency { omega } => {
                let h_z = theta.iter().map(|th| 0.5 * omega * th.cos()).collect();
                (h_z, vec![omega; n], vec![0.0; n])
            }
        };
        Ok(Self {
            frame,
            dt,
            theta,
            dtheta_dt,
            h_z,
            omega,
            omega_rate,
            clamped,
        })
    }

    /// Like [`new`](Self::new) with dθ/dt estimated by finite differences.
    pub fn from_theta_samples(frame: Frame, t_p: f64, theta: Vec<f64>) -> Result<Self> {
        if theta.len() < 2 {
            return invalid("a trajectory needs at least two samples");
        }
        let dt = t_p / (theta.len() - 1) as f64;
        let rate = quadrature::derivative(&theta, dt);
        Self::new(frame, t_p, theta, rate)
    }

    /// Lab-frame trajectory from samples of the physical control `H_z(t)` and
    /// its time derivative.
    pub fn from_h_z(h_x: f64, t_p: f64, h_z: &[f64], dh_z_dt: &[f64]) -> Result<Self> {
        if h_z.len() != dh_z_dt.len() {
            return invalid("h_z and dh_z_dt must have the same length");
        }
        if !(h_x > 0.0) {
            return invalid(format!("h_x must be positive, got {h_x}"));
        }
        let theta = h_z.iter().map(|z| h_x.atan2(*z)).collect();
        let rate = h_z
            .iter()
            .zip(dh_z_dt)
            .map(|(z, dz)| -h_x * dz / (h_x * h_x + z * z))
            .collect();
        Self::new(Frame::Lab { h_x }, t_p, theta, rate)
    }

    /// Samples a Fourier waveform on `n` points.
    pub fn from_waveform(w: &FourierWaveform, frame: Frame, n: usize) -> Result<Self> {
        let (theta, rate) = w.sample(n);
        Self::new(frame, w.t_p(), theta, rate)
    }

    /// The trajectory run backwards in time.
    pub fn reversed(&self) -> Self {
        let mut theta = self.theta.clone();
        theta.reverse();
        let rate: Vec<f64> = self.dtheta_dt.iter().rev().map(|d| -d).collect();
        Self::new(self.frame, self.t_p(), theta, rate).expect("reversal of a valid trajectory")
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_p(&self) -> f64 {
        self.dt * (self.len() - 1) as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.len() - 1 {
            self.t_p()
        } else {
            k as f64 * self.dt
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.time(k)).collect()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn dtheta_dt(&self) -> &[f64] {
        &self.dtheta_dt
    }

    pub fn h_z(&self) -> &[f64] {
        &self.h_z
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// dω/dt by the chain rule through θ.
    pub fn omega_rate(&self) -> &[f64] {
        &self.omega_rate
    }

    /// Number of samples that were pulled away from the poles.
    pub fn clamped_samples(&self) -> usize {
        self.clamped
    }

    /// Precession frequency as a function of θ in this frame.
    pub fn omega_at(&self, theta: f64) -> f64 {
        match self.frame {
            Frame::Lab { h_x } => 2.0 * h_x / theta.sin(),
            Frame::ConstantFrequency { omega } => omega,
        }
    }

    /// Accumulated precession phase `∫₀ᵗ ω dt'` at each sample.
    pub fn phase(&self) -> Vec<f64> {
        quadrature::cumulative_trapezoid_corrected(&self.omega, &self.omega_rate, self.dt)
    }

    /// θ and dθ/dt at fraction `s ∈ [0, 1]` of interval `k`, from the cubic
    /// Hermite interpolant through the θ samples with node slopes dθ/dt.
    pub fn hermite(&self, k: usize, s: f64) -> (f64, f64) {
        let h = self.dt;
        let (y0, y1) = (self.theta[k], self.theta[k + 1]);
        let (m0, m1) = (self.dtheta_dt[k] * h, self.dtheta_dt[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let theta = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1;
        let rate = ((6.0 * s2 - 6.0 * s) * (y0 - y1) + (3.0 * s2 - 4.0 * s + 1.0) * m0 + (3.0 * s2 - 2.0 * s) * m1)
            / h;
        (theta, rate)
    }

    /// Largest precession frequency on the grid.
    pub fn max_omega(&self) -> f64 {
        self.omega.iter().copied().fold(0.0, f64::max)
    }

    /// Checks that a time lies on the trajectory's domain.
    pub fn check_time(&self, t: f64) -> Result<()> {
        let t_p = self.t_p();
        if t < -1e-12 * t_p || t > t_p * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain { t, t_max: t_p });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ControlGeometry;
    use crate::waveform::BasisMode;

    #[test]
    fn lab_frame_frequency_identity() {
        let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0866, -0.0866], 4.0, 3.0, 0.1)
            .unwrap();
        let tr = SampledTrajectory::from_waveform(&w, Frame::Lab { h_x: 1.0 }, 257).unwrap();
        for ((om, th), hz) in tr.omega().iter().zip(tr.theta()).zip(tr.h_z()) {
            assert!((om * th.sin() - 2.0).abs() < 1e-12 * om);
            let g = ControlGeometry::new(*hz, 1.0).unwrap();
            assert!((g.omega - om).abs() < 1e-10 * om);
        }
    }

    #[test]
    fn grid_is_uniform() {
        let tr = SampledTrajectory::new(Frame::Lab { h_x: 1.0 }, 3.0, vec![1.0; 1024], vec![0.0; 1024]).unwrap();
        let t = tr.times();
        for pair in t.windows(2) {
            assert!(((pair[1] - pair[0]) - tr.dt()).abs() < 1e-9 * tr.dt());
        }
        assert_eq!(*t.last().unwrap(), 3.0);
    }

    #[test]
    fn poles_are_clamped() {
        let tr = SampledTrajectory::new(Frame::Lab { h_x: 1.0 }, 1.0, vec![0.0, 1.0, PI], vec![0.0; 3]).unwrap();
        assert_eq!(tr.clamped_samples(), 2);
        assert!(tr.theta().iter().all(|t| *t > 0.0 && *t < PI));
    }

    #[test]
    fn h_z_round_trip() {
        let h_z: Vec<f64> = quadrature::linspace(-10.0, 10.0, 101);
        let rate = vec![0.341; 101];
        let tr = SampledTrajectory::from_h_z(1.0, 20.0 / 0.341, &h_z, &rate).unwrap();
        for (a, b) in tr.h_z().iter().zip(&h_z) {
            assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
        // dθ/dt = -h_x ḣ_z / (h_x² + h_z²)
        assert!((tr.dtheta_dt()[50] + 0.341).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let f = Frame::Lab { h_x: 1.0 };
        assert!(SampledTrajectory::new(f, 1.0, vec![1.0], vec![0.0]).is_err());
        assert!(SampledTrajectory::new(f, 0.0, vec![1.0; 3], vec![0.0; 3]).is_err());
        assert!(SampledTrajectory::new(f, 1.0, vec![1.0, f64::NAN], vec![0.0; 2]).is_err());
        assert!(SampledTrajectory::new(Frame::Lab { h_x: 0.0 }, 1.0, vec![1.0; 2], vec![0.0; 2]).is_err());
    }
}
