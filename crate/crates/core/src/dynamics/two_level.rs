// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trajectory::SampledTrajectory;

/// Largest precession phase advanced in one integrator substep.
pub const DEFAULT_PHASE_STEP: f64 = 0.01;

/// Integration settings shared by both two-level backends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepControl {
    /// Upper bound on `ω·h` for each substep.
    pub phase_step: f64,
    /// Lower bound on substeps per trajectory interval.
    pub min_substeps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            phase_step: DEFAULT_PHASE_STEP,
            min_substeps: 1,
        }
    }
}

impl StepControl {
    /// The same control with every step halved.
    pub fn refined(self) -> Self {
        Self {
            phase_step: self.phase_step / 2.0,
            min_substeps: self.min_substeps * 2,
        }
    }

    fn substeps(&self, traj: &SampledTrajectory, k: usize) -> usize {
        let w = traj.omega()[k].max(traj.omega()[k + 1]);
        let m = (w * traj.dt() / self.phase_step).ceil() as usize;
        m.max(self.min_substeps).max(1)
    }
}

/// Result of integrating the moving-frame amplitude equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOutcome {
    pub p_e: f64,
    /// `α*β`, the coherence between ground and excited moving-frame amplitudes.
    pub ab_product: Complex64,
    /// `|α|² - |β|²`, carried alongside to fix the square-root branch.
    pub population_difference: f64,
}

/// Result of the direct 2×2 propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectOutcome {
    pub p_e: f64,
    /// Amplitudes on the σz eigenbasis, `(|↑⟩, |↓⟩)`.
    pub final_state: [Complex64; 2],
    pub norm_drift: f64,
    /// `‖U†U - I‖_max` of the accumulated propagator.
    pub unitarity_drift: f64,
}

/// Excitation probability from `α*β` and the sign of `|α|²-|β|²`, written to
/// avoid cancellation when the error is small.
fn excited_population(z: Complex64, w: f64) -> f64 {
    let q = (1.0 - 4.0 * z.norm_sqr()).max(0.0).sqrt();
    if w >= 0.0 {
        2.0 * z.norm_sqr() / (1.0 + q)
    } else {
        0.5 * (1.0 + q)
    }
}

/// Integrates `d(α*β)/dt = iω α*β + sgn(|α|²-|β|²) √(1-4|α*β|²) θ̇/2` from the
/// ground state with classical RK4. θ between samples comes from the cubic
/// Hermite interpolant through the samples and their slopes.
pub fn evolve_two_level_exact(traj: &SampledTrajectory) -> Result<ExactOutcome> {
    evolve_two_level_exact_with(traj, StepControl::default())
}

pub fn evolve_two_level_exact_with(traj: &SampledTrajectory, steps: StepControl) -> Result<ExactOutcome> {
    let rhs = |theta: f64, rate: f64, z: Complex64, w: f64| -> (Complex64, f64) {
        let omega = traj.omega_at(theta);
        let q = (1.0 - 4.0 * z.norm_sqr()).max(0.0).sqrt();
        let branch = if w >= 0.0 { q } else { -q };
        (
            Complex64::new(0.0, omega) * z + 0.5 * branch * rate,
            -2.0 * rate * z.re,
        )
    };
    let mut z = Complex64::new(0.0, 0.0);
    let mut w = 1.0;
    for k in 0..traj.len() - 1 {
        let m = steps.substeps(traj, k);
        let ds = 1.0 / m as f64;
        let h = traj.dt() * ds;
        for j in 0..m {
            let s0 = j as f64 * ds;
            let (th0, r0) = traj.hermite(k, s0);
            let (thm, rm) = traj.hermite(k, s0 + 0.5 * ds);
            let (th1, r1) = traj.hermite(k, s0 + ds);
            let (k1z, k1w) = rhs(th0, r0, z, w);
            let (k2z, k2w) = rhs(thm, rm, z + 0.5 * h * k1z, w + 0.5 * h * k1w);
            let (k3z, k3w) = rhs(thm, rm, z + 0.5 * h * k2z, w + 0.5 * h * k2w);
            let (k4z, k4w) = rhs(th1, r1, z + h * k3z, w + h * k3w);
            z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        let excess = z.norm() - 0.5;
        if excess > 1e-9 {
            return Err(Error::Numerical(format!(
                "|α*β| exceeded 1/2 by {excess:.3e} at sample {}",
                k + 1
            )));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Numerical(format!("non-finite amplitude at sample {}", k + 1)));
        }
    }
    Ok(ExactOutcome {
        p_e: excited_population(z, w),
        ab_product: z,
        population_difference: w,
    })
}

type Mat2 = [[Complex64; 2]; 2];

/// `exp(-i (a σx + b σy + c σz))`.
fn pauli_exp(a: f64, b: f64, c: f64) -> Mat2 {
    let n = (a * a + b * b + c * c).sqrt();
    let (sn, cs) = n.sin_cos();
    let f = if n > 1e-300 { sn / n } else { 1.0 };
    let i = Complex64::i();
    // cos n I - i sin n (n̂·σ)
    [
        [Complex64::new(cs, 0.0) - i * (f * c), -i * f * Complex64::new(a, -b)],
        [-i * f * Complex64::new(a, b), Complex64::new(cs, 0.0) + i * (f * c)],
    ]
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

/// Ground eigenvector of `(ω/2)(sin θ σx + cos θ σz)`.
pub fn ground_state(theta: f64) -> [Complex64; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)]
}

/// Excited eigenvector of `(ω/2)(sin θ σx + cos θ σz)`.
pub fn excited_state(theta: f64) -> [Complex64; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    [Complex64::new(c, 0.0), Complex64::new(s, 0.0)]
}

/// Propagates `H = (ω/2)(sin θ σx + cos θ σz)` (which is `h_x σx + h_z σz` in
/// the lab frame) with the fourth-order two-point Gauss Magnus integrator and
/// projects onto the final excited eigenstate.
pub fn evolve_two_level_direct(traj: &SampledTrajectory) -> Result<DirectOutcome> {
    evolve_two_level_direct_with(traj, StepControl::default())
}

pub fn evolve_two_level_direct_with(traj: &SampledTrajectory, steps: StepControl) -> Result<DirectOutcome> {
    let g = 3f64.sqrt() / 6.0;
    let fields = |theta: f64| {
        let half = 0.5 * traj.omega_at(theta);
        (half * theta.sin(), half * theta.cos())
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut u: Mat2 = [[one, zero], [zero, one]];
    for k in 0..traj.len() - 1 {
        let m = steps.substeps(traj, k);
        let ds = 1.0 / m as f64;
        let h = traj.dt() * ds;
        for j in 0..m {
            let s0 = j as f64 * ds;
            let (a1, c1) = fields(traj.hermite(k, s0 + (0.5 - g) * ds).0);
            let (a2, c2) = fields(traj.hermite(k, s0 + (0.5 + g) * ds).0);
            // Ω = -i h (H1+H2)/2 + (√3/12) h² [H1, H2], and
            // [H1, H2] = 2i (c1 a2 - a1 c2) σy for H = a σx + c σz.
            let a = 0.5 * h * (a1 + a2);
            let c = 0.5 * h * (c1 + c2);
            let b = g * h * h * (a1 * c2 - c1 * a2);
            u = mat_mul(&pauli_exp(a, b, c), &u);
        }
    }
    let psi0 = ground_state(traj.theta()[0]);
    let psi = [
        u[0][0] * psi0[0] + u[0][1] * psi0[1],
        u[1][0] * psi0[0] + u[1][1] * psi0[1],
    ];
    let norm = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
    let mut drift: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let v = u[0][i].conj() * u[0][j] + u[1][i].conj() * u[1][j];
            let target = if i == j { 1.0 } else { 0.0 };
            drift = drift.max((v - target).norm());
        }
    }
    let norm_drift = (norm - 1.0).abs();
    if norm_drift > 1e-9 || drift > 1e-9 {
        return Err(Error::Numerical(format!(
            "propagator lost unitarity: norm drift {norm_drift:.3e}, ‖U†U-I‖ {drift:.3e}"
        )));
    }
    let e = excited_state(*traj.theta().last().unwrap());
    let amp = e[0].conj() * psi[0] + e[1].conj() * psi[1];
    Ok(DirectOutcome {
        p_e: amp.norm_sqr(),
        final_state: psi,
        norm_drift,
        unitarity_drift: drift,
    })
}

/// Probability of leaving the ground state under an instantaneous jump of the
/// control angle from `theta_from` to `theta_to`.
pub fn sudden_quench_error(theta_from: f64, theta_to: f64) -> f64 {
    (0.5 * (theta_to - theta_from)).sin().powi(2)
}
