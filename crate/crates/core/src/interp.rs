// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Piecewise cubic Hermite interpolation with an optional monotonicity limiter.

use crate::error::{invalid, Error, Result};

/// Cubic Hermite interpolant through `(x_k, y_k)` with node slopes `m_k`.
#[derive(Debug, Clone)]
pub struct CubicHermite {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicHermite {
    /// Builds the interpolant. When `slopes` is `None`, node slopes are the
    /// three-point estimates. With `monotone` set, slopes go through the
    /// Fritsch-Carlson limiter so the interpolant never overshoots the data.
    pub fn new(x: Vec<f64>, y: Vec<f64>, slopes: Option<Vec<f64>>, monotone: bool) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return invalid("interpolation needs at least two (x, y) pairs of equal length");
        }
        if x.windows(2).any(|p| !(p[1] > p[0])) {
            return invalid("interpolation abscissae must be strictly increasing");
        }
        let secant: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / (x[k + 1] - x[k])).collect();
        let mut m = match slopes {
            Some(s) => {
                if s.len() != n {
                    return invalid("slope vector length differs from the data");
                }
                s
            }
            None => three_point_slopes(&x, &y),
        };
        if monotone {
            fritsch_carlson(&secant, &mut m);
        }
        Ok(Self { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    /// Value and first derivative at `xq`. Queries within a relative `1e-12`
    /// of the domain edges are clamped; anything further out is rejected.
    pub fn eval(&self, xq: f64) -> Result<(f64, f64)> {
        let (a, b) = self.domain();
        let slack = 1e-12 * (b - a).abs().max(1.0);
        if !(xq >= a - slack && xq <= b + slack) {
            return Err(Error::OutOfDomain { t: xq, t_max: b });
        }
        let xq = xq.clamp(a, b);
        let k = match self.x.partition_point(|v| *v <= xq) {
            0 => 0,
            p => (p - 1).min(self.x.len() - 2),
        };
        let h = self.x[k + 1] - self.x[k];
        let s = (xq - self.x[k]) / h;
        let (y0, y1, m0, m1) = (self.y[k], self.y[k + 1], self.m[k] * h, self.m[k + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1;
        let deriv = ((6.0 * s2 - 6.0 * s) * y0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * y1
            + (3.0 * s2 - 2.0 * s) * m1)
            / h;
        Ok((value, deriv))
    }
}

fn three_point_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 2 {
        let d = (y[1] - y[0]) / (x[1] - x[0]);
        return vec![d, d];
    }
    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        let (h0, h1) = (x[k] - x[k - 1], x[k + 1] - x[k]);
        let (d0, d1) = ((y[k] - y[k - 1]) / h0, (y[k + 1] - y[k]) / h1);
        m[k] = (h1 * d0 + h0 * d1) / (h0 + h1);
    }
    m[0] = 2.0 * (y[1] - y[0]) / (x[1] - x[0]) - m[1];
    m[n - 1] = 2.0 * (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]) - m[n - 2];
    m
}

fn fritsch_carlson(secant: &[f64], m: &mut [f64]) {
    let n = m.len();
    // Zero slope at local extrema of the data.
    for k in 1..n - 1 {
        if secant[k - 1] * secant[k] <= 0.0 {
            m[k] = 0.0;
        }
    }
    for k in 0..n - 1 {
        let d = secant[k];
        if d == 0.0 {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        if m[k] * d < 0.0 {
            m[k] = 0.0;
        }
        if m[k + 1] * d < 0.0 {
            m[k + 1] = 0.0;
        }
        let (a, b) = (m[k] / d, m[k + 1] / d);
        let r = a * a + b * b;
        if r > 9.0 {
            let t = 3.0 / r.sqrt();
            m[k] = t * a * d;
            m[k + 1] = t * b * d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_slopes_give_fourth_order() {
        let err = |n: usize| {
            let x: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64 * 3.0).collect();
            let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
            let m: Vec<f64> = x.iter().map(|v| v.cos()).collect();
            let h = CubicHermite::new(x, y, Some(m), false).unwrap();
            (0..997)
                .map(|j| {
                    let q = j as f64 / 996.0 * 3.0;
                    (h.eval(q).unwrap().0 - q.sin()).abs()
                })
                .fold(0.0, f64::max)
        };
        assert!(err(33) / err(65) > 14.0);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let h = CubicHermite::new(vec![0.0, 1.0], vec![0.0, 1.0], None, true).unwrap();
        assert!(h.eval(1.5).is_err());
        assert!(h.eval(-0.1).is_err());
        assert!((h.eval(1.0 + 1e-14).unwrap().0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_increasing_abscissa() {
        assert!(CubicHermite::new(vec![0.0, 0.0], vec![0.0, 1.0], None, true).is_err());
    }

    proptest! {
        #[test]
        fn limited_interpolant_stays_monotone(steps in proptest::collection::vec(0.0f64..2.0, 3..20)) {
            let x: Vec<f64> = (0..=steps.len()).map(|k| k as f64).collect();
            let mut y = vec![0.0];
            for s in &steps {
                y.push(y.last().unwrap() + s);
            }
            let h = CubicHermite::new(x.clone(), y, None, true).unwrap();
            let mut prev = f64::NEG_INFINITY;
            for j in 0..=400 {
                let q = j as f64 / 400.0 * *x.last().unwrap();
                let v = h.eval(q).unwrap().0;
                prop_assert!(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
}
