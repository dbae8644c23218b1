// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Uniform-grid quadrature helpers shared by the spectral, error and remap code.
//!
//! All integrals over sampled signals go through [`weights`] so that two routes
//! computing the same integral (for instance the geometric error at constant
//! frequency and the power spectral density) agree to rounding.

/// Composite quadrature weights for `n` uniformly spaced samples with spacing `dt`.
///
/// Simpson's rule is used when the number of intervals is even. For an odd
/// number of intervals the weights are the average of "Simpson then 3/8 rule at
/// the end" and "3/8 rule at the start then Simpson", which keeps fourth-order
/// accuracy and makes the weights symmetric under time reversal.
pub fn weights(n: usize, dt: f64) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        2 => vec![0.5 * dt, 0.5 * dt],
        3 => vec![dt / 3.0, 4.0 * dt / 3.0, dt / 3.0],
        4 => vec![3.0 * dt / 8.0, 9.0 * dt / 8.0, 9.0 * dt / 8.0, 3.0 * dt / 8.0],
        _ => {
            let intervals = n - 1;
            if intervals % 2 == 0 {
                simpson(n, dt)
            } else {
                let mut tail = simpson(n - 3, dt);
                tail.extend_from_slice(&[0.0; 3]);
                add_three_eighths(&mut tail, n - 4, dt);
                let mut head = vec![0.0; n];
                add_three_eighths(&mut head, 0, dt);
                for (h, s) in head[3..].iter_mut().zip(simpson(n - 3, dt)) {
                    *h += s;
                }
                tail.iter().zip(&head).map(|(a, b)| 0.5 * (a + b)).collect()
            }
        }
    }
}

fn simpson(n: usize, dt: f64) -> Vec<f64> {
    debug_assert!(n >= 3 && (n - 1) % 2 == 0);
    (0..n)
        .map(|k| {
            let c = if k == 0 || k == n - 1 {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * dt / 3.0
        })
        .collect()
}

fn add_three_eighths(w: &mut [f64], start: usize, dt: f64) {
    for (j, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
        w[start + j] += c * 3.0 * dt / 8.0;
    }
}

/// Integral of uniformly sampled values.
pub fn integrate(values: &[f64], dt: f64) -> f64 {
    weights(values.len(), dt)
        .iter()
        .zip(values)
        .map(|(w, v)| w * v)
        .sum()
}

/// Running integral by the trapezoid rule, starting at zero.
pub fn cumulative_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for pair in values.windows(2) {
        acc += 0.5 * dt * (pair[0] + pair[1]);
        out.push(acc);
    }
    out.truncate(values.len());
    out
}

/// Running integral by the trapezoid rule with the Euler-Maclaurin endpoint
/// correction `-dt^2/12 (g'_{k+1} - g'_k)` on every step, using the supplied
/// derivative samples. The correction telescopes, so the final value is the
/// plain trapezoid total minus `dt^2/12 (g'_end - g'_0)`.
pub fn cumulative_trapezoid_corrected(values: &[f64], derivs: &[f64], dt: f64) -> Vec<f64> {
    assert_eq!(values.len(), derivs.len());
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    if values.is_empty() {
        return out;
    }
    out.push(0.0);
    for k in 1..values.len() {
        acc += 0.5 * dt * (values[k - 1] + values[k]) - dt * dt / 12.0 * (derivs[k] - derivs[k - 1]);
        out.push(acc);
    }
    out
}

/// Derivative of uniformly sampled values: fourth-order central differences in
/// the interior and fourth-order one-sided stencils at the two ends on each side.
/// Falls back to second order for fewer than five samples.
pub fn derivative(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        2 => {
            let d = (values[1] - values[0]) / dt;
            vec![d, d]
        }
        3 | 4 => {
            let mut d = vec![0.0; n];
            d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt);
            for k in 1..n - 1 {
                d[k] = (values[k + 1] - values[k - 1]) / (2.0 * dt);
            }
            d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * dt);
            d
        }
        _ => {
            let f = values;
            let mut d = vec![0.0; n];
            let fwd = |k: usize| {
                (-25.0 * f[k] + 48.0 * f[k + 1] - 36.0 * f[k + 2] + 16.0 * f[k + 3] - 3.0 * f[k + 4])
                    / (12.0 * dt)
            };
            let bwd = |k: usize| {
                (25.0 * f[k] - 48.0 * f[k - 1] + 36.0 * f[k - 2] - 16.0 * f[k - 3] + 3.0 * f[k - 4])
                    / (12.0 * dt)
            };
            d[0] = fwd(0);
            d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * dt);
            for k in 2..n - 2 {
                d[k] = (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * dt);
            }
            d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
                / (12.0 * dt);
            d[n - 1] = bwd(n - 1);
            d
        }
    }
}

/// Derivative by second-order centred differences with one-sided first-order
/// differences at the two endpoints.
pub fn centered_difference(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let mut d = vec![0.0; n];
    d[0] = (values[1] - values[0]) / dt;
    d[n - 1] = (values[n - 1] - values[n - 2]) / dt;
    for k in 1..n - 1 {
        d[k] = (values[k + 1] - values[k - 1]) / (2.0 * dt);
    }
    d
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { stop } else { start + i as f64 * step })
                .collect()
        }
    }
}

/// `n` logarithmically spaced points from `start` to `stop` inclusive.
pub fn geomspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), stop.ln());
    linspace(a, b, n).into_iter().map(f64::exp).collect()
}

/// Trapezoid rule on an arbitrary (sorted) abscissa.
pub fn trapezoid_nonuniform(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}
