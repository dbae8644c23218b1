// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Control geometry of `H = h_x σx + h_z σz` with ħ = 1.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Hamiltonian vector `(h_x, 0, h_z)` together with its angle from the z axis
/// and the eigenstate splitting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlGeometry {
    pub h_x: f64,
    pub h_z: f64,
    /// `atan2(h_x, h_z)`, in (0, π) for positive `h_x`.
    pub theta: f64,
    /// `2 sqrt(h_x² + h_z²)`.
    pub omega: f64,
}

impl ControlGeometry {
    pub fn new(h_z: f64, h_x: f64) -> Result<Self> {
        if !(h_x > 0.0) || !h_x.is_finite() {
            return invalid(format!("h_x must be positive and finite, got {h_x}"));
        }
        if !h_z.is_finite() {
            return invalid(format!("h_z must be finite, got {h_z}"));
        }
        Ok(Self {
            h_x,
            h_z,
            theta: h_x.atan2(h_z),
            omega: 2.0 * h_x.hypot(h_z),
        })
    }

    /// Geometry at control angle `theta` for fixed transverse field.
    pub fn from_theta(theta: f64, h_x: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return invalid(format!("theta must lie in (0, π), got {theta}"));
        }
        if !(h_x > 0.0) || !h_x.is_finite() {
            return invalid(format!("h_x must be positive and finite, got {h_x}"));
        }
        let (s, c) = theta.sin_cos();
        Ok(Self {
            h_x,
            h_z: h_x * c / s,
            theta,
            omega: 2.0 * h_x / s,
        })
    }

    /// Transverse splitting `ω_x = 2 h_x`, the gap at the avoided crossing.
    pub fn omega_x(&self) -> f64 {
        2.0 * self.h_x
    }
}

/// Geometry for longitudinal field `h_z` and transverse field `h_x`.
pub fn control_geometry(h_z: f64, h_x: f64) -> Result<ControlGeometry> {
    ControlGeometry::new(h_z, h_x)
}

/// Period of one oscillation at the avoided crossing, `2π/ω_x = π/h_x`.
/// Pulse times are usually quoted in units of this period.
pub fn crossing_period(h_x: f64) -> f64 {
    std::f64::consts::PI / h_x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn symmetry_point() {
        let g = control_geometry(0.0, 1.0).unwrap();
        assert_relative_eq!(g.theta, PI / 2.0);
        assert_relative_eq!(g.omega, 2.0);
    }

    #[test]
    fn pythagorean_triple() {
        let g = control_geometry(3.0, 4.0).unwrap();
        assert_relative_eq!(g.omega, 10.0);
    }

    #[test]
    fn far_detuned() {
        let g = control_geometry(10.0, 1.0).unwrap();
        assert_relative_eq!(g.theta, 0.1f64.atan(), epsilon = 1e-15);
        assert!((g.theta - 0.0996687).abs() < 1e-7);
    }

    #[test]
    fn rejects_degenerate_coupling() {
        assert!(control_geometry(1.0, 0.0).is_err());
        assert!(control_geometry(1.0, -1.0).is_err());
        assert!(control_geometry(f64::NAN, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn invariants_hold(h_z in -50.0f64..50.0, h_x in 0.01f64..10.0) {
            let g = control_geometry(h_z, h_x).unwrap();
            prop_assert!(g.theta > 0.0 && g.theta < PI);
            prop_assert!((g.omega * g.theta.sin() - 2.0 * h_x).abs() < 1e-12 * g.omega);
            let back = ControlGeometry::from_theta(g.theta, h_x).unwrap();
            prop_assert!((back.h_z - h_z).abs() < 1e-10 * (1.0 + h_z.abs()));
            prop_assert!((back.omega - g.omega).abs() < 1e-10 * g.omega);
        }
    }
}
