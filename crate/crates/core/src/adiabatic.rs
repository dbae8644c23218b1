// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Linearised non-adiabatic error and error-versus-pulse-time curves.
//!
//! In the frame that rotates with the instantaneous eigenbasis, the error
//! amplitude is the Fourier-like integral `θ_mr = -∫ θ̇ e^{-iφ(t)} dt` with
//! `φ(t) = ∫₀ᵗ ω`, and `P_e ≈ |θ_mr|²/4`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{evolve_two_level_direct, evolve_two_level_exact};
use crate::error::{invalid, Result};
use crate::quadrature;
use crate::trajectory::{Frame, SampledTrajectory};
use crate::waveform::FourierWaveform;

/// |θ_mr| above which the small-angle picture is flagged as unreliable.
pub const REGIME_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorMethod {
    Linearized,
    /// Drive scaled by `cos(arcsin|θ_mr|)` and `P_e = sin²(arcsin|θ_mr| / 2)`.
    LinearizedExactCorrection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorResult {
    pub theta_mr: Complex64,
    pub p_e: f64,
    pub method: ErrorMethod,
    /// Set when `|θ_mr|` exceeds [`REGIME_THRESHOLD`].
    pub out_of_regime: bool,
}

fn phase_factors(traj: &SampledTrajectory) -> Vec<Complex64> {
    traj.phase()
        .into_iter()
        .map(|p| Complex64::from_polar(1.0, -p))
        .collect()
}

/// Linearised error amplitude and probability of a trajectory.
pub fn geometric_error(traj: &SampledTrajectory) -> ErrorResult {
    let rot = phase_factors(traj);
    let w = quadrature::weights(traj.len(), traj.dt());
    let mut acc = Complex64::new(0.0, 0.0);
    for ((r, d), wk) in rot.iter().zip(traj.dtheta_dt()).zip(&w) {
        acc += r * (d * wk);
    }
    let theta_mr = -acc;
    ErrorResult {
        theta_mr,
        p_e: 0.25 * theta_mr.norm_sqr(),
        method: ErrorMethod::Linearized,
        out_of_regime: theta_mr.norm() > REGIME_THRESHOLD,
    }
}

/// Running amplitude `θ_mr(t)` at every sample, with the drive optionally
/// scaled sample-by-sample.
pub fn moving_frame_amplitude(traj: &SampledTrajectory) -> Vec<Complex64> {
    running_amplitude(traj, &phase_factors(traj), None)
}

fn running_amplitude(traj: &SampledTrajectory, rot: &[Complex64], scale: Option<&[f64]>) -> Vec<Complex64> {
    let d = traj.dtheta_dt();
    let integrand: Vec<Complex64> = (0..traj.len())
        .map(|k| -rot[k] * d[k] * scale.map_or(1.0, |s| s[k]))
        .collect();
    let mut out = Vec::with_capacity(traj.len());
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    for pair in integrand.windows(2) {
        acc += 0.5 * traj.dt() * (pair[0] + pair[1]);
        out.push(acc);
    }
    out
}

/// The exact-correction variant: two fixed-point passes that scale the drive
/// by `cos(arcsin|θ_mr(t)|)`, then `P_e = sin²(arcsin|θ_mr| / 2)`.
pub fn geometric_error_corrected(traj: &SampledTrajectory) -> ErrorResult {
    let rot = phase_factors(traj);
    let mut scale = vec![1.0; traj.len()];
    for _ in 0..2 {
        let running = running_amplitude(traj, &rot, Some(&scale));
        for (s, a) in scale.iter_mut().zip(&running) {
            let m = a.norm().min(1.0);
            *s = (1.0 - m * m).sqrt();
        }
    }
    let w = quadrature::weights(traj.len(), traj.dt());
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..traj.len() {
        acc += rot[k] * (traj.dtheta_dt()[k] * scale[k] * w[k]);
    }
    let theta_mr = -acc;
    let m = theta_mr.norm();
    let p_e = (0.5 * m.min(1.0).asin()).sin().powi(2);
    ErrorResult {
        theta_mr,
        p_e,
        method: ErrorMethod::LinearizedExactCorrection,
        out_of_regime: m > REGIME_THRESHOLD,
    }
}

/// Landau-Zener transition probability `exp(-π h_x² / rate)` for a linear
/// sweep of `H_z` at `rate = dH_z/dt` (ħ = 1).
pub fn landau_zener_error(h_x: f64, ramp_rate: f64) -> Result<f64> {
    if !(ramp_rate > 0.0) || !ramp_rate.is_finite() {
        return invalid(format!("ramp rate must be positive, got {ramp_rate}"));
    }
    if !h_x.is_finite() {
        return invalid("h_x must be finite");
    }
    Ok((-std::f64::consts::PI * h_x * h_x / ramp_rate).exp())
}

/// Sweep duration needed for a Landau-Zener error `p_e` over a field range
/// `span` of `H_z`.
pub fn landau_zener_time(h_x: f64, span: f64, p_e: f64) -> Result<f64> {
    if !(p_e > 0.0 && p_e < 1.0) {
        return invalid("target error must lie in (0, 1)");
    }
    let rate = -std::f64::consts::PI * h_x * h_x / p_e.ln();
    Ok(span / rate)
}

/// Anything that yields a trajectory for a given pulse time and sample count.
pub trait WaveformFamily: Sync {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory>;
}

impl<F> WaveformFamily for F
where
    F: Fn(f64, usize) -> Result<SampledTrajectory> + Sync,
{
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        self(t_p, n_samples)
    }
}

/// A fixed Fourier shape stretched to each pulse time, in a chosen frame.
#[derive(Debug, Clone)]
pub struct ScaledWaveform {
    pub waveform: FourierWaveform,
    pub frame: Frame,
}

impl WaveformFamily for ScaledWaveform {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        let w = self.waveform.with_duration(t_p)?;
        SampledTrajectory::from_waveform(&w, self.frame, n_samples)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    Linearized,
    LinearizedExactCorrection,
    /// Moving-frame amplitude ODE.
    Exact,
    /// Direct 2×2 propagation.
    Direct,
}

impl Evaluator {
    pub fn evaluate(self, traj: &SampledTrajectory) -> Result<f64> {
        Ok(match self {
            Evaluator::Linearized => geometric_error(traj).p_e,
            Evaluator::LinearizedExactCorrection => geometric_error_corrected(traj).p_e,
            Evaluator::Exact => evolve_two_level_exact(traj)?.p_e,
            Evaluator::Direct => evolve_two_level_direct(traj)?.p_e,
        })
    }
}

/// Sample counts tried by the convergence guard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampling {
    pub initial: usize,
    pub max: usize,
    /// Relative change in `P_e` accepted between successive doublings.
    pub rel_tol: f64,
    /// Absolute change accepted regardless of size (for deep minima).
    pub abs_tol: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            initial: 1024,
            max: 1 << 16,
            rel_tol: 1e-8,
            abs_tol: 1e-14,
        }
    }
}

impl Sampling {
    pub fn fixed(n: usize) -> Self {
        Self {
            initial: n,
            max: n,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t_p: f64,
    pub p_e: f64,
    pub n_samples: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub t_p: f64,
    pub message: String,
}

/// `(t_p, P_e)` pairs tagged by evaluator, plus any points that failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCurve {
    pub evaluator: Evaluator,
    pub points: Vec<CurvePoint>,
    pub failures: Vec<PointFailure>,
}

impl ErrorCurve {
    pub fn t_p(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t_p).collect()
    }

    pub fn p_e(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.p_e).collect()
    }
}

/// Evaluates one pulse time, doubling the sample count until `P_e` settles.
pub fn converged_error(
    family: &dyn WaveformFamily,
    t_p: f64,
    evaluator: Evaluator,
    sampling: Sampling,
) -> Result<CurvePoint> {
    let mut n = sampling.initial.max(2);
    let mut prev = evaluator.evaluate(&family.trajectory(t_p, n)?)?;
    while n < sampling.max {
        let next_n = (2 * (n - 1) + 1).min(sampling.max);
        let next = evaluator.evaluate(&family.trajectory(t_p, next_n)?)?;
        let settled = (next - prev).abs() <= sampling.rel_tol * next.abs() + sampling.abs_tol;
        n = next_n;
        prev = next;
        if settled {
            return Ok(CurvePoint {
                t_p,
                p_e: prev,
                n_samples: n,
                converged: true,
            });
        }
    }
    let converged = sampling.initial >= sampling.max;
    if !converged {
        log::warn!("P_e at t_p = {t_p} not settled at {n} samples");
    }
    Ok(CurvePoint {
        t_p,
        p_e: prev,
        n_samples: n,
        converged,
    })
}

/// Error curve over a grid of pulse times. Points are evaluated in parallel;
/// failures are collected rather than aborting the sweep.
pub fn error_curve(
    family: &dyn WaveformFamily,
    t_p_grid: &[f64],
    evaluator: Evaluator,
    sampling: Sampling,
) -> Result<ErrorCurve> {
    if t_p_grid.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return invalid("pulse-time grid must be positive and finite");
    }
    if t_p_grid.windows(2).any(|p| !(p[1] > p[0])) {
        return invalid("pulse-time grid must be strictly increasing");
    }
    let results: Vec<(f64, Result<CurvePoint>)> = t_p_grid
        .par_iter()
        .map(|&t| (t, converged_error(family, t, evaluator, sampling)))
        .collect();
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for (t_p, r) in results {
        match r {
            Ok(p) => points.push(p),
            Err(e) => failures.push(PointFailure {
                t_p,
                message: e.to_string(),
            }),
        }
    }
    Ok(ErrorCurve {
        evaluator,
        points,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{hanning_psd, psd, rectangular_psd};
    use crate::waveform::BasisMode;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn constant_frame(omega: f64) -> Frame {
        Frame::ConstantFrequency { omega }
    }

    #[test]
    fn frozen_control_has_no_error() {
        let tr = SampledTrajectory::new(constant_frame(2.0), 1.0, vec![1.0; 33], vec![0.0; 33]).unwrap();
        let r = geometric_error(&tr);
        assert_eq!(r.p_e, 0.0);
        assert_eq!(r.theta_mr, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn square_pulse_matches_sinc() {
        let (d, t_p, w0) = (0.2, 3.7, 2.0);
        let tr = SampledTrajectory::new(constant_frame(w0), t_p, vec![1.0; 1025], vec![d / t_p; 1025]).unwrap();
        let p = geometric_error(&tr).p_e;
        let exact = d * d * (w0 * t_p / 2.0).sin().powi(2) / (w0 * t_p).powi(2);
        assert!((p / exact - 1.0).abs() < 1e-6);
        assert!((p / (rectangular_psd(d, t_p, w0) / 4.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hanning_matches_closed_form() {
        let (d, w0) = (0.3, 2.0);
        let w = FourierWaveform::new(BasisMode::DerivativeBasis, vec![d / 5.3], 5.3, 1.0, 1.0 + d).unwrap();
        let tr = SampledTrajectory::from_waveform(&w, constant_frame(w0), 1025).unwrap();
        let p = geometric_error(&tr).p_e;
        let exact = hanning_psd(d, 5.3, w0) / 4.0;
        assert!((p / exact - 1.0).abs() < 1e-6, "{p} vs {exact}");
    }

    #[test]
    fn matches_quarter_psd() {
        let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0866, -0.0866], 4.1, 0.4, 0.6).unwrap();
        let tr = SampledTrajectory::from_waveform(&w, constant_frame(2.0), 1024).unwrap();
        let s = psd(tr.dtheta_dt(), tr.dt(), &[2.0]).unwrap().values[0];
        assert!((geometric_error(&tr).p_e - s / 4.0).abs() < 1e-10 * s.max(1e-300));
    }

    #[test]
    fn landau_zener_values() {
        assert!((landau_zener_error(1.0, 0.341).unwrap() / 1e-4 - 1.0).abs() < 0.01);
        assert!((landau_zener_error(1.0, PI).unwrap() - (-1.0f64).exp()).abs() < 1e-15);
        assert!(landau_zener_error(1.0, 1e-3).unwrap() < 1e-300);
        assert!(landau_zener_error(1.0, 0.0).is_err());
        let t = landau_zener_time(1.0, 20.0, 1e-4).unwrap();
        assert!((t / PI - 18.66).abs() < 0.01, "{}", t / PI);
    }

    #[test]
    fn corrected_variant_small_limit() {
        let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0], 1.0, 0.5, 0.6).unwrap();
        let tr = SampledTrajectory::from_waveform(&w, Frame::Lab { h_x: 1.0 }, 1025).unwrap();
        let a = geometric_error(&tr);
        let b = geometric_error_corrected(&tr);
        assert!((a.p_e / b.p_e - 1.0).abs() < 1e-2);
        assert!(b.p_e <= 1.0 && b.p_e >= 0.0);
    }

    #[test]
    fn rectangular_curve_has_sinc_nulls() {
        let family = |t_p: f64, n: usize| {
            SampledTrajectory::new(constant_frame(2.0), t_p, vec![1.0; n], vec![0.1 / t_p; n])
        };
        let grid: Vec<f64> = (1..=4).map(|k| PI * k as f64).collect();
        let c = error_curve(&family, &grid, Evaluator::Linearized, Sampling::fixed(1024)).unwrap();
        assert!(c.failures.is_empty());
        assert!(c.points.iter().all(|p| p.p_e < 1e-20));
    }

    #[test]
    fn curve_records_failures() {
        let family = |t_p: f64, n: usize| {
            if t_p > 2.0 {
                invalid("boom")
            } else {
                SampledTrajectory::new(constant_frame(2.0), t_p, vec![1.0; n], vec![0.0; n])
            }
        };
        let c = error_curve(&family, &[1.0, 3.0], Evaluator::Linearized, Sampling::fixed(64)).unwrap();
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.failures.len(), 1);
        assert!(error_curve(&family, &[2.0, 1.0], Evaluator::Linearized, Sampling::fixed(64)).is_err());
    }

    #[test]
    fn convergence_guard_settles() {
        let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0866, -0.0866], 2.0, 0.3, 1.3).unwrap();
        let family = ScaledWaveform { waveform: w, frame: Frame::Lab { h_x: 1.0 } };
        let p = converged_error(&family, 2.5, Evaluator::Linearized, Sampling::default()).unwrap();
        assert!(p.converged);
    }

    proptest! {
        #[test]
        fn amplitude_linearity(scale in 0.1f64..3.0, t_p in 1.0f64..6.0) {
            let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0, 0.2, -0.1], t_p, 0.0, 0.3).unwrap();
            let (th, d) = w.sample(257);
            let a = SampledTrajectory::new(constant_frame(2.0), t_p, th.clone(), d.clone()).unwrap();
            let b = SampledTrajectory::new(constant_frame(2.0), t_p, th, d.iter().map(|v| v * scale).collect()).unwrap();
            let (ra, rb) = (geometric_error(&a), geometric_error(&b));
            prop_assert!((rb.theta_mr - ra.theta_mr * scale).norm() < 1e-12 * (1.0 + rb.theta_mr.norm()));
            prop_assert!((rb.p_e - ra.p_e * scale * scale).abs() < 1e-12 * (1e-12 + rb.p_e));
        }

        #[test]
        fn reversal_preserves_magnitude(t_p in 1.0f64..6.0, c2 in -0.3f64..0.3) {
            let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.0, c2, 0.05], t_p, 0.4, 1.4).unwrap();
            let tr = SampledTrajectory::from_waveform(&w, Frame::Lab { h_x: 1.0 }, 1025).unwrap();
            let a = geometric_error(&tr).theta_mr.norm();
            let b = geometric_error(&tr.reversed()).theta_mr.norm();
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + a));
        }
    }
}
