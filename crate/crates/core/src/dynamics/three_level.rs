// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature;
use crate::simplex::{nelder_mead, NelderMeadOptions};

/// Complex drive `W = x - i D ẋ / Δ`, with ẋ from centred differences.
pub fn drag_envelope(envelope_x: &[f64], dt: f64, drag_d: f64, delta: f64) -> Result<Vec<Complex64>> {
    if delta == 0.0 || !delta.is_finite() {
        return invalid("anharmonicity must be finite and nonzero");
    }
    let xd = quadrature::centered_difference(envelope_x, dt);
    Ok(envelope_x
        .iter()
        .zip(&xd)
        .map(|(x, d)| Complex64::new(*x, -drag_d * d / delta))
        .collect())
}

/// Drive-induced qubit frequency shift `-(1 + 2D) x² / (2Δ)`.
pub fn stark_shift(x: f64, drag_d: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 || !delta.is_finite() {
        return invalid("anharmonicity must be finite and nonzero");
    }
    Ok(-(1.0 + 2.0 * drag_d) * x * x / (2.0 * delta))
}

/// `(1 - cos 2πt/t_p)` sampled on `n` points and scaled to area `area`.
pub fn hanning_envelope(n: usize, t_p: f64, area: f64) -> Vec<f64> {
    quadrature::linspace(0.0, t_p, n)
        .into_iter()
        .map(|t| area / t_p * (1.0 - (2.0 * PI * t / t_p).cos()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetRotation {
    /// `-i σx`
    PiPulse,
    /// `(I - i σx)/√2`
    HalfPiPulse,
}

impl TargetRotation {
    fn matrix(self) -> Matrix2<Complex64> {
        let (c, s) = match self {
            TargetRotation::PiPulse => (0.0, 1.0),
            TargetRotation::HalfPiPulse => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        };
        Matrix2::new(
            Complex64::new(c, 0.0),
            Complex64::new(0.0, -s),
            Complex64::new(0.0, -s),
            Complex64::new(c, 0.0),
        )
    }

    /// Rotation angle, which equals the envelope area needed without leakage.
    pub fn angle(self) -> f64 {
        match self {
            TargetRotation::PiPulse => PI,
            TargetRotation::HalfPiPulse => PI / 2.0,
        }
    }
}

/// Which levels take part in the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelModel {
    ThreeLevel,
    /// Drop the coupling to the second excited state (the `Δ → -∞` limit).
    QubitTruncation,
}

/// A microwave pulse on a weakly anharmonic oscillator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeLevelPulse {
    /// `x(t)` on a uniform grid over `[0, t_p]`.
    pub envelope_x: Vec<f64>,
    pub drag_d: f64,
    /// Anharmonicity; negative for transmons.
    pub delta: f64,
    /// Drive frequency minus qubit frequency.
    pub detuning: f64,
    /// Drive phase applied to the whole complex envelope.
    pub phase: f64,
    pub t_p: f64,
}

impl ThreeLevelPulse {
    pub fn validate(&self) -> Result<()> {
        if self.envelope_x.len() < 3 {
            return invalid("envelope needs at least three samples");
        }
        if self.envelope_x.iter().any(|x| !x.is_finite()) {
            return invalid("envelope samples must be finite");
        }
        if self.delta == 0.0 || !self.delta.is_finite() {
            return invalid("anharmonicity must be finite and nonzero");
        }
        if !(self.t_p > 0.0) || !self.t_p.is_finite() {
            return invalid("pulse time must be positive");
        }
        if !self.drag_d.is_finite() || !self.detuning.is_finite() || !self.phase.is_finite() {
            return invalid("drive parameters must be finite");
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.t_p / (self.envelope_x.len() - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeLevelOutcome {
    pub unitary: Matrix3<Complex64>,
    /// Mean of `P(0→2)` and `P(1→2)`.
    pub err2_avg: f64,
    /// `1 - |Tr(T† V)|²/4` with `V` the closest unitary to the qubit block.
    pub qubit_subspace_error: f64,
    pub unitarity_drift: f64,
}

/// Propagates the rotating-frame Hamiltonian
/// `diag(0, -δ, Δ - 2δ)` + drive `E/2` on `0↔1` and `√2 E/2` on `1↔2`,
/// with `E = W e^{iφ}`, exactly over each sample interval at the interval's
/// mean drive.
pub fn evolve_three_level(pulse: &ThreeLevelPulse, target: TargetRotation) -> Result<ThreeLevelOutcome> {
    evolve_levels(pulse, target, LevelModel::ThreeLevel)
}

pub fn evolve_levels(pulse: &ThreeLevelPulse, target: TargetRotation, model: LevelModel) -> Result<ThreeLevelOutcome> {
    pulse.validate()?;
    let dt = pulse.dt();
    let w = drag_envelope(&pulse.envelope_x, dt, pulse.drag_d, pulse.delta)?;
    let rot = Complex64::from_polar(1.0, pulse.phase);
    let couple2 = match model {
        LevelModel::ThreeLevel => 2f64.sqrt(),
        LevelModel::QubitTruncation => 0.0,
    };
    let zero = Complex64::new(0.0, 0.0);
    let d1 = Complex64::new(-pulse.detuning, 0.0);
    let d2 = Complex64::new(pulse.delta - 2.0 * pulse.detuning, 0.0);
    let mut u = Matrix3::<Complex64>::identity();
    for pair in w.windows(2) {
        let e = 0.5 * (pair[0] + pair[1]) * rot;
        let h01 = 0.5 * e;
        let h12 = 0.5 * couple2 * e;
        let h = Matrix3::new(
            zero, h01, zero,
            h01.conj(), d1, h12,
            zero, h12.conj(), d2,
        );
        let eig = h.symmetric_eigen();
        let phases = eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l * dt));
        let v = eig.eigenvectors;
        let step = v * Matrix3::from_diagonal(&phases) * v.adjoint();
        u = step * u;
    }
    let drift = (u.adjoint() * u - Matrix3::identity())
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    if !(drift < 1e-9) {
        return Err(Error::Numerical(format!("three-level propagator drift {drift:.3e}")));
    }
    let err2_avg = 0.5 * (u[(2, 0)].norm_sqr() + u[(2, 1)].norm_sqr());
    let block = u.fixed_view::<2, 2>(0, 0).into_owned();
    let svd = block.svd(true, true);
    let polar = svd.u.unwrap() * svd.v_t.unwrap();
    let overlap = (target.matrix().adjoint() * polar).trace();
    let qubit_subspace_error = (1.0 - overlap.norm_sqr() / 4.0).max(0.0);
    Ok(ThreeLevelOutcome {
        unitary: u,
        err2_avg,
        qubit_subspace_error,
        unitarity_drift: drift,
    })
}

/// Calibrated drive parameters for one pulse shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Envelope area `∫x dt`.
    pub amplitude: f64,
    pub detuning: f64,
    pub phase: f64,
    pub qubit_subspace_error: f64,
    pub err2_avg: f64,
    /// Whether the qubit error reached [`CALIBRATION_TARGET`].
    pub target_met: bool,
    pub evaluations: usize,
}

pub const CALIBRATION_TARGET: f64 = 1e-7;

/// Finds envelope area, detuning and phase that minimise the qubit-subspace
/// error of `shape` (any envelope, rescaled to unit area), starting from the
/// area theorem. Returns the best point found even if the target is missed.
pub fn calibrate_pulse(
    shape: &[f64],
    t_p: f64,
    drag_d: f64,
    delta: f64,
    target: TargetRotation,
    model: LevelModel,
) -> Result<Calibration> {
    if shape.len() < 3 {
        return invalid("envelope needs at least three samples");
    }
    let dt = t_p / (shape.len() - 1) as f64;
    let area = quadrature::integrate(shape, dt);
    if !(area.abs() > 0.0) || !area.is_finite() {
        return invalid("envelope shape has zero area");
    }
    let unit: Vec<f64> = shape.iter().map(|x| x / area).collect();
    let build = |p: &[f64]| ThreeLevelPulse {
        envelope_x: unit.iter().map(|x| x * p[0]).collect(),
        drag_d,
        delta,
        detuning: p[1],
        phase: p[2],
        t_p,
    };
    build(&[1.0, 0.0, 0.0]).validate()?;
    let objective = |p: &[f64]| match evolve_levels(&build(p), target, model) {
        Ok(o) => (o.qubit_subspace_error + 1e-16).log10(),
        Err(_) => f64::INFINITY,
    };
    let opts = NelderMeadOptions {
        max_evaluations: 3000,
        x_tolerance: 1e-10,
        f_tolerance: 1e-6,
    };
    let x0 = [target.angle(), 0.0, 0.0];
    let steps = [0.05 * target.angle(), 0.1 / t_p, 0.05];
    let first = nelder_mead(objective, &x0, &steps, opts);
    let restart_steps = [0.01 * target.angle(), 0.02 / t_p, 0.01];
    let second = nelder_mead(objective, &first.x, &restart_steps, opts);
    let best = if second.value <= first.value { &second } else { &first };
    let out = evolve_levels(&build(&best.x), target, model)?;
    Ok(Calibration {
        amplitude: best.x[0],
        detuning: best.x[1],
        phase: best.x[2],
        qubit_subspace_error: out.qubit_subspace_error,
        err2_avg: out.err2_avg,
        target_met: out.qubit_subspace_error < CALIBRATION_TARGET,
        evaluations: first.evaluations + second.evaluations,
    })
}

/// The pulse described by a calibration.
pub fn calibrated_pulse(shape: &[f64], t_p: f64, drag_d: f64, delta: f64, cal: &Calibration) -> ThreeLevelPulse {
    let dt = t_p / (shape.len() - 1) as f64;
    let area = quadrature::integrate(shape, dt);
    ThreeLevelPulse {
        envelope_x: shape.iter().map(|x| x / area * cal.amplitude).collect(),
        drag_d,
        delta,
        detuning: cal.detuning,
        phase: cal.phase,
        t_p,
    }
}
