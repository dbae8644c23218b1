// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Sampled window functions: rectangular, Hanning and the zeroth discrete
//! prolate spheroidal (Slepian) sequence.
//!
//! All windows are returned with unit discrete sum, so multiplying by
//! `Δθ / dt` turns one into a `dθ/dt` profile spanning `Δθ`.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};

pub fn rectangular(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// `1 - cos(2πk/(n-1))`, normalised to unit sum.
pub fn hanning(n: usize) -> Vec<f64> {
    if n < 3 {
        return rectangular(n);
    }
    let raw: Vec<f64> = (0..n)
        .map(|k| 1.0 - (2.0 * PI * k as f64 / (n - 1) as f64).cos())
        .collect();
    normalise(raw)
}

fn normalise(v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

/// Zeroth-order DPSS of length `n_samples` with time-bandwidth product
/// `time_bandwidth = N·W`, where `W` is the half-bandwidth in cycles per
/// sample. For a pulse of duration `t_p` sampled at `n` points this is the
/// window with the most energy below `ω_c = 2π·time_bandwidth / t_p`.
///
/// The sequence is the dominant eigenvector of the commuting tridiagonal
/// matrix with diagonal `((N-1-2k)/2)² cos 2πW` and off-diagonal `k(N-k)/2`,
/// found by Sturm bisection and inverse iteration.
pub fn slepian_window(n_samples: usize, time_bandwidth: f64) -> Result<Vec<f64>> {
    if n_samples < 8 {
        return invalid(format!("Slepian window needs at least 8 samples, got {n_samples}"));
    }
    if !(time_bandwidth > 0.0 && time_bandwidth < n_samples as f64 / 2.0) {
        return invalid(format!(
            "time-bandwidth must lie in (0, n/2), got {time_bandwidth}"
        ));
    }
    let n = n_samples;
    let w = time_bandwidth / n as f64;
    let cw = (2.0 * PI * w).cos();
    let diag: Vec<f64> = (0..n)
        .map(|k| {
            let a = (n as f64 - 1.0 - 2.0 * k as f64) / 2.0;
            a * a * cw
        })
        .collect();
    let off: Vec<f64> = (1..n).map(|k| (k * (n - k)) as f64 / 2.0).collect();
    let lambda = largest_eigenvalue(&diag, &off)?;
    let mut v = inverse_iteration(&diag, &off, lambda)?;
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(normalise(v))
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (k, d) in diag.iter().enumerate() {
        let e2 = if k == 0 { 0.0 } else { off[k - 1] * off[k - 1] };
        q = d - x - if k == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + x.abs()).max(1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn largest_eigenvalue(diag: &[f64], off: &[f64]) -> Result<f64> {
    let n = diag.len();
    let radius = |k: usize| {
        let l = if k > 0 { off[k - 1].abs() } else { 0.0 };
        let r = if k < n - 1 { off[k].abs() } else { 0.0 };
        l + r
    };
    let mut lo = (0..n).map(|k| diag[k] - radius(k)).fold(f64::INFINITY, f64::min);
    let mut hi = (0..n).map(|k| diag[k] + radius(k)).fold(f64::NEG_INFINITY, f64::max);
    let scale = hi.abs().max(lo.abs()).max(1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, off, mid) < n {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 4.0 * f64::EPSILON * scale {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::EigenNonConvergence { iterations: 200 })
}

/// Solves `(T - shift) x = b` for tridiagonal `T` by the Thomas algorithm.
fn thomas(diag: &[f64], off: &[f64], shift: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let tiny = 1e-300;
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut piv = diag[0] - shift;
    if piv.abs() < tiny {
        piv = tiny;
    }
    c[0] = if n > 1 { off[0] / piv } else { 0.0 };
    d[0] = b[0] / piv;
    for k in 1..n {
        let mut p = diag[k] - shift - off[k - 1] * c[k - 1];
        if p.abs() < tiny {
            p = tiny;
        }
        if k < n - 1 {
            c[k] = off[k] / p;
        }
        d[k] = (b[k] - off[k - 1] * d[k - 1]) / p;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for k in (0..n - 1).rev() {
        x[k] = d[k] - c[k] * x[k + 1];
    }
    x
}

fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    let scale = lambda.abs().max(1.0);
    let shift = lambda + 1e-10 * scale;
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    const MAX_ITER: usize = 50;
    for _ in 0..MAX_ITER {
        let mut x = thomas(diag, off, shift, &v);
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::EigenNonConvergence { iterations: MAX_ITER });
        }
        x.iter_mut().for_each(|a| *a /= norm);
        if x[n / 2] * v[n / 2] < 0.0 {
            x.iter_mut().for_each(|a| *a = -*a);
        }
        let change = x.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = x;
        if change < 1e-14 {
            return Ok(v);
        }
    }
    Err(Error::EigenNonConvergence { iterations: MAX_ITER })
}

/// Fraction of a sequence's energy within `|f| < W` cycles per sample,
/// using the exact band-limiting kernel `sin 2πW(m-n) / π(m-n)`.
pub fn spectral_concentration(window: &[f64], half_bandwidth: f64) -> f64 {
    let n = window.len();
    let kernel: Vec<f64> = (0..n)
        .map(|d| {
            if d == 0 {
                2.0 * half_bandwidth
            } else {
                (2.0 * PI * half_bandwidth * d as f64).sin() / (PI * d as f64)
            }
        })
        .collect();
    let mut inband = 0.0;
    for m in 0..n {
        for k in 0..n {
            inband += window[m] * window[k] * kernel[m.abs_diff(k)];
        }
    }
    let total: f64 = window.iter().map(|v| v * v).sum();
    inband / total
}
