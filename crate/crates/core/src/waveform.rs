// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Few-term Fourier parameterisations of the control angle.
//!
//! Two bases are supported:
//!
//! * [`BasisMode::DerivativeBasis`]: `dθ/dt = Σ λ_n [1 - cos(2πnt/t_p)]`, a
//!   one-way sweep from `θ_i` to `θ_f` with `θ_f - θ_i = t_p Σ λ_n`.
//! * [`BasisMode::ThetaBasis`]: `θ - θ_i = Σ λ'_n [1 - cos(2πnt/t_p)]`, an
//!   out-and-back excursion reaching `θ_f` at `t_p/2`, with
//!   `θ_f - θ_i = 2 Σ_{n odd} λ'_n`.
//!
//! Both bases have `dθ/dt = 0` at the two ends of the pulse.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerance on the endpoint constraint, in radians.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisMode {
    /// Coefficients parameterise `dθ/dt` (units 1/time).
    DerivativeBasis,
    /// Coefficients parameterise `θ` itself (radians).
    ThetaBasis,
}

impl BasisMode {
    /// Quantity fixed by the endpoint constraint, given the coefficients.
    ///
    /// For the derivative basis this is `Σ λ_n` (to be multiplied by `t_p`);
    /// for the θ basis it is `2 Σ_{n odd} λ'_n`.
    pub fn constraint_sum(self, coefficients: &[f64]) -> f64 {
        match self {
            BasisMode::DerivativeBasis => coefficients.iter().sum(),
            BasisMode::ThetaBasis => 2.0 * coefficients.iter().step_by(2).sum::<f64>(),
        }
    }
}

/// θ and dθ/dt at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveformSample {
    pub theta: f64,
    pub dtheta_dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierWaveform {
    mode: BasisMode,
    coefficients: Vec<f64>,
    t_p: f64,
    theta_i: f64,
    theta_f: f64,
}

impl FourierWaveform {
    /// Builds a waveform from physical coefficients, rejecting vectors that miss
    /// the endpoint constraint by more than [`CONSTRAINT_TOLERANCE`].
    pub fn new(
        mode: BasisMode,
        coefficients: Vec<f64>,
        t_p: f64,
        theta_i: f64,
        theta_f: f64,
    ) -> Result<Self> {
        validate_common(&coefficients, t_p, theta_i, theta_f)?;
        let w = Self {
            mode,
            coefficients,
            t_p,
            theta_i,
            theta_f,
        };
        let residual = w.constraint_residual();
        if residual.abs() > CONSTRAINT_TOLERANCE {
            return Err(Error::ConstraintViolation {
                residual,
                tolerance: CONSTRAINT_TOLERANCE,
            });
        }
        Ok(w)
    }

    /// Builds a waveform from a dimensionless shape vector.
    ///
    /// The shape is renormalised so that its constraint sum is one, then scaled
    /// to span `θ_f - θ_i` in time `t_p`. Table-style coefficients such as
    /// `{1.0866, -0.0866}` go in here unchanged. A zero excursion gives the
    /// zero waveform.
    pub fn from_shape(
        mode: BasisMode,
        shape: &[f64],
        t_p: f64,
        theta_i: f64,
        theta_f: f64,
    ) -> Result<Self> {
        validate_common(shape, t_p, theta_i, theta_f)?;
        let delta = theta_f - theta_i;
        let norm = mode.constraint_sum(shape);
        let coefficients: Vec<f64> = if delta == 0.0 {
            vec![0.0; shape.len()]
        } else {
            if norm.abs() < 1e-14 {
                return invalid("shape coefficients have zero constraint sum");
            }
            let scale = match mode {
                BasisMode::DerivativeBasis => delta / (t_p * norm),
                BasisMode::ThetaBasis => delta / norm,
            };
            shape.iter().map(|c| c * scale).collect()
        };
        let mut w = Self {
            mode,
            coefficients,
            t_p,
            theta_i,
            theta_f,
        };
        w.absorb_residual();
        Ok(w)
    }

    /// Pushes any rounding residual of the constraint into the first coefficient.
    fn absorb_residual(&mut self) {
        let r = self.constraint_residual();
        match self.mode {
            BasisMode::DerivativeBasis => self.coefficients[0] -= r / self.t_p,
            BasisMode::ThetaBasis => self.coefficients[0] -= r / 2.0,
        }
    }

    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn t_p(&self) -> f64 {
        self.t_p
    }

    pub fn theta_i(&self) -> f64 {
        self.theta_i
    }

    pub fn theta_f(&self) -> f64 {
        self.theta_f
    }

    pub fn n_terms(&self) -> usize {
        self.coefficients.len()
    }

    /// Reached angle minus requested angle, in radians.
    pub fn constraint_residual(&self) -> f64 {
        let reached = match self.mode {
            BasisMode::DerivativeBasis => self.t_p * self.mode.constraint_sum(&self.coefficients),
            BasisMode::ThetaBasis => self.mode.constraint_sum(&self.coefficients),
        };
        reached - (self.theta_f - self.theta_i)
    }

    /// Dimensionless shape with unit constraint sum.
    pub fn shape(&self) -> Vec<f64> {
        let norm = self.mode.constraint_sum(&self.coefficients);
        if norm == 0.0 {
            return self.coefficients.clone();
        }
        self.coefficients.iter().map(|c| c / norm).collect()
    }

    /// The same shape stretched to a new duration. Derivative-basis
    /// coefficients scale as `1/t_p`; θ-basis coefficients are unchanged.
    pub fn with_duration(&self, t_p: f64) -> Result<Self> {
        if !(t_p > 0.0) || !t_p.is_finite() {
            return invalid(format!("pulse time must be positive, got {t_p}"));
        }
        let coefficients = match self.mode {
            BasisMode::DerivativeBasis => {
                let r = self.t_p / t_p;
                self.coefficients.iter().map(|c| c * r).collect()
            }
            BasisMode::ThetaBasis => self.coefficients.clone(),
        };
        let mut w = Self {
            coefficients,
            t_p,
            ..self.clone()
        };
        w.absorb_residual();
        Ok(w)
    }

    /// θ and dθ/dt at time `t`.
    pub fn eval(&self, t: f64) -> Result<WaveformSample> {
        let slack = 1e-12 * self.t_p;
        if !(t >= -slack && t <= self.t_p + slack) {
            return Err(Error::OutOfDomain { t, t_max: self.t_p });
        }
        let t = t.clamp(0.0, self.t_p);
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> WaveformSample {
        let base = 2.0 * PI * t / self.t_p;
        let mut theta = self.theta_i;
        let mut rate = 0.0;
        match self.mode {
            BasisMode::DerivativeBasis => {
                for (k, &l) in self.coefficients.iter().enumerate() {
                    let n = (k + 1) as f64;
                    let (s, c) = (n * base).sin_cos();
                    rate += l * (1.0 - c);
                    theta += l * (t - self.t_p / (2.0 * PI * n) * s);
                }
            }
            BasisMode::ThetaBasis => {
                for (k, &l) in self.coefficients.iter().enumerate() {
                    let n = (k + 1) as f64;
                    let (s, c) = (n * base).sin_cos();
                    theta += l * (1.0 - c);
                    rate += l * 2.0 * PI * n / self.t_p * s;
                }
            }
        }
        WaveformSample {
            theta,
            dtheta_dt: rate,
        }
    }

    /// Samples θ and dθ/dt on `n` uniform points spanning `[0, t_p]`.
    pub fn sample(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let dt = self.t_p / (n.max(2) - 1) as f64;
        (0..n)
            .map(|k| {
                let t = if k == n - 1 { self.t_p } else { k as f64 * dt };
                let s = self.eval_unchecked(t);
                (s.theta, s.dtheta_dt)
            })
            .unzip()
    }
}

fn validate_common(coefficients: &[f64], t_p: f64, theta_i: f64, theta_f: f64) -> Result<()> {
    if coefficients.is_empty() {
        return invalid("at least one Fourier coefficient is required");
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return invalid("Fourier coefficients must be finite");
    }
    if !(t_p > 0.0) || !t_p.is_finite() {
        return invalid(format!("pulse time must be positive, got {t_p}"));
    }
    if !theta_i.is_finite() || !theta_f.is_finite() {
        return invalid("endpoint angles must be finite");
    }
    Ok(())
}

/// θ and dθ/dt of a Fourier waveform at time `t`.
pub fn eval_fourier(w: &FourierWaveform, t: f64) -> Result<WaveformSample> {
    w.eval(t)
}
