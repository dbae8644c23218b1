// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A Fourier-basis coefficient vector does not reach the requested endpoint.
    #[error("coefficient constraint violated: residual {residual:.3e} rad exceeds {tolerance:.1e}")]
    ConstraintViolation { residual: f64, tolerance: f64 },

    #[error("time {t} lies outside the waveform domain [0, {t_max}]")]
    OutOfDomain { t: f64, t_max: f64 },

    /// theta touched 0 or pi, where the lab-frame gap frequency diverges.
    #[error("control angle {theta} at sample {index} touches a pole of the frequency map")]
    Pole { index: usize, theta: f64 },

    #[error("eigen-solver did not converge after {iterations} iterations")]
    EigenNonConvergence { iterations: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
