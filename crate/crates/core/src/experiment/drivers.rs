// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use rayon::prelude::*;

use super::config::*;
use super::export::{Column, Table};
use crate::adiabatic::{converged_error, error_curve as sweep, landau_zener_error, Sampling, ScaledWaveform, WaveformFamily};
use crate::dynamics::{calibrate_pulse, hanning_envelope};
use crate::error::{Error, Result};
use crate::geometry::crossing_period;
use crate::optimize::{
    optimize_coefficients, optimize_cz_pulse, ConvolvedFamily, Objective, ObjectiveKind, SearchOptions,
    PSD_GRID_POINTS, PSD_UPPER_FACTOR,
};
use crate::quadrature::{self, linspace};
use crate::remap::{RemapParams, RemappedFamily};
use crate::spectrum::{integrated_psd, psd};
use crate::trajectory::{Frame, SampledTrajectory};
use crate::waveform::{BasisMode, FourierWaveform};
use crate::window;

const H_X: f64 = 1.0;

fn tx() -> f64 {
    crossing_period(H_X)
}

/// Scales samples so their quadrature integral is one.
fn unit_area(v: Vec<f64>, dt: f64) -> Vec<f64> {
    let a = quadrature::integrate(&v, dt);
    v.into_iter().map(|x| x / a).collect()
}

pub(super) fn psd_windows(p: &PsdWindowsParams) -> Result<Vec<Table>> {
    let n = p.n_samples;
    let dt = 1.0 / (n - 1) as f64;
    let fourier = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &p.coefficients, 1.0, 0.0, 1.0)?;
    let signals = [
        ("rectangular", unit_area(window::rectangular(n), dt)),
        ("hanning", unit_area(window::hanning(n), dt)),
        ("slepian", unit_area(window::slepian_window(n, p.slepian_time_bandwidth)?, dt)),
        ("fourier", fourier.sample(n).1),
    ];
    let x = linspace(p.omega_tp_over_2pi_min, p.omega_tp_over_2pi_max, p.n_omega);
    let omegas: Vec<f64> = x.iter().map(|v| 2.0 * PI * v).collect();
    let spectra = signals
        .iter()
        .map(|(_, s)| psd(s, dt, &omegas))
        .collect::<Result<Vec<_>>>()?;

    let mut columns = vec![Column::real("omega_tp_over_2pi", "1")];
    columns.extend(signals.iter().map(|(name, _)| Column::real(&format!("psd_{name}"), "rad^2")));
    let mut curve = Table::new("psd_windows", columns);
    for (k, xk) in x.iter().enumerate() {
        let mut row = vec![*xk];
        row.extend(spectra.iter().map(|s| s.values[k]));
        curve.push(row);
    }

    let lo = 2.0 * PI * p.cutoff_omega_tp_over_2pi;
    let mut columns = vec![Column::real("cutoff_omega_tp_over_2pi", "1")];
    columns.extend(signals.iter().map(|(name, _)| Column::real(&format!("out_of_band_{name}"), "rad^2/t_p")));
    let mut band = Table::new("psd_out_of_band", columns);
    let mut row = vec![p.cutoff_omega_tp_over_2pi];
    for (_, s) in &signals {
        row.push(integrated_psd(s, dt, lo, PSD_UPPER_FACTOR * lo, PSD_GRID_POINTS, false)?);
    }
    band.push(row);
    Ok(vec![curve, band])
}

fn curve_columns() -> Vec<Column> {
    vec![
        Column::real("t_p", "T_x"),
        Column::real("p_e", "1"),
        Column::count("n_samples"),
        Column::count("converged"),
    ]
}

fn curve_table(name: &str, family: &dyn WaveformFamily, grid_tx: &[f64], evaluator: crate::adiabatic::Evaluator, sampling: Sampling) -> Result<Table> {
    let grid: Vec<f64> = grid_tx.iter().map(|t| t * tx()).collect();
    let curve = sweep(family, &grid, evaluator, sampling)?;
    if let Some(f) = curve.failures.first() {
        return Err(Error::Numerical(format!("t_p = {} T_x: {}", f.t_p / tx(), f.message)));
    }
    let mut table = Table::new(name, curve_columns());
    for pt in &curve.points {
        table.push(vec![pt.t_p / tx(), pt.p_e, pt.n_samples as f64, pt.converged as u8 as f64]);
    }
    Ok(table)
}

struct Ramp {
    theta_i: f64,
    theta_f: f64,
    frame: Frame,
}

impl WaveformFamily for Ramp {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        let theta = linspace(self.theta_i, self.theta_f, n_samples);
        let rate = vec![(self.theta_f - self.theta_i) / t_p; n_samples];
        SampledTrajectory::new(self.frame, t_p, theta, rate)
    }
}

pub(super) fn error_curve(p: &ErrorCurveParams) -> Result<Vec<Table>> {
    let (mode, shape) = match p.window {
        WindowKind::Hanning => (BasisMode::DerivativeBasis, vec![1.0]),
        _ => (p.basis, p.coefficients.clone()),
    };
    let frame = Frame::ConstantFrequency {
        omega: p.omega0_over_omega_x * 2.0 * H_X,
    };
    let family: Box<dyn WaveformFamily> = match (p.frame, p.window) {
        (FrameKind::ConstantFrequency, WindowKind::Rectangular) => Box::new(Ramp {
            theta_i: p.theta_i_rad,
            theta_f: p.theta_f_rad,
            frame,
        }),
        (FrameKind::ConstantFrequency, _) => Box::new(ScaledWaveform {
            waveform: FourierWaveform::from_shape(mode, &shape, 1.0, p.theta_i_rad, p.theta_f_rad)?,
            frame,
        }),
        (FrameKind::Remapped, _) => Box::new(RemappedFamily::new(
            mode,
            &shape,
            p.theta_i_rad,
            p.theta_f_rad,
            RemapParams::default(),
        )?),
    };
    let sampling = Sampling {
        initial: p.initial_samples,
        max: p.max_samples,
        ..Sampling::default()
    };
    let grid = linspace(p.t_p_over_tx_min, p.t_p_over_tx_max, p.n_points);
    Ok(vec![curve_table("error_curve", family.as_ref(), &grid, p.evaluator, sampling)?])
}

struct LinearSweep {
    span: f64,
    rate: f64,
}

impl WaveformFamily for LinearSweep {
    fn trajectory(&self, t_p: f64, n_samples: usize) -> Result<SampledTrajectory> {
        let h_z = linspace(-self.span, self.span, n_samples);
        SampledTrajectory::from_h_z(H_X, t_p, &h_z, &vec![self.rate; n_samples])
    }
}

pub(super) fn lz_sweep(p: &LzSweepParams) -> Result<Vec<Table>> {
    let cases: Vec<(f64, f64)> = p
        .ramp_rate_over_h_x2
        .iter()
        .flat_map(|r| p.span_over_h_x.iter().map(move |s| (*r, *s)))
        .collect();
    let sampling = Sampling {
        initial: p.initial_samples,
        ..Sampling::default()
    };
    let rows = cases
        .par_iter()
        .map(|&(rate, span)| {
            let t_p = 2.0 * span * H_X / rate;
            let pt = converged_error(&LinearSweep { span, rate }, t_p, p.evaluator, sampling)?;
            let formula = landau_zener_error(H_X, rate)?;
            Ok(vec![
                span,
                rate,
                t_p / tx(),
                pt.p_e,
                formula,
                (pt.p_e - formula) / formula,
                pt.n_samples as f64,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(
        "lz_sweep",
        vec![
            Column::real("span", "h_x"),
            Column::real("ramp_rate", "h_x^2/hbar"),
            Column::real("t_p", "T_x"),
            Column::real("p_e", "1"),
            Column::real("p_e_landau_zener", "1"),
            Column::real("relative_deviation", "1"),
            Column::count("n_samples"),
        ],
    );
    table.rows = rows;
    Ok(vec![table])
}

pub(super) fn cz_pulse(p: &CzPulseParams, seed: u64) -> Result<Vec<Table>> {
    let options = SearchOptions {
        restarts: p.restarts,
        seed,
        max_evaluations: p.max_evaluations,
        ..SearchOptions::default()
    };
    let sigma = p.sigma_over_tx * tx();
    let report = optimize_cz_pulse(
        p.theta_i_rad,
        p.theta_f_rad,
        p.n_coeffs,
        sigma,
        (p.window_t_p_over_tx_min * tx(), p.window_t_p_over_tx_max * tx(), p.window_points),
        p.n_samples,
        options,
    )?;
    let mut coeffs = Table::new("cz_coefficients", vec![Column::count("n"), Column::real("lambda", "rad")]);
    for (k, c) in report.coefficients.iter().enumerate() {
        coeffs.push(vec![(k + 1) as f64, *c]);
    }
    let mut summary = Table::new(
        "cz_summary",
        vec![
            Column::real("sigma", "T_x"),
            Column::real("window_max_p_e", "1"),
            Column::count("evaluations"),
            Column::count("converged"),
        ],
    );
    summary.push(vec![
        p.sigma_over_tx,
        report.objective_value,
        report.evaluations as f64,
        report.converged as u8 as f64,
    ]);

    let grid = linspace(p.curve_t_p_over_tx_min, p.curve_t_p_over_tx_max, p.curve_points);
    let sampling = Sampling {
        initial: p.n_samples,
        ..Sampling::default()
    };
    let curve = if p.theta_f_rad == p.theta_i_rad {
        let mut t = Table::new("cz_error_curve", curve_columns());
        for g in &grid {
            t.push(vec![*g, 0.0, p.n_samples as f64, 1.0]);
        }
        t
    } else {
        let family = RemappedFamily::new(
            BasisMode::ThetaBasis,
            &report.coefficients,
            p.theta_i_rad,
            p.theta_f_rad,
            RemapParams::default(),
        )?;
        let rounded = ConvolvedFamily {
            inner: family,
            sigma,
            h_x: H_X,
        };
        curve_table("cz_error_curve", &rounded, &grid, crate::adiabatic::Evaluator::Exact, sampling)?
    };
    Ok(vec![coeffs, summary, curve])
}

pub(super) fn table1(p: &Table1Params, seed: u64) -> Result<Vec<Table>> {
    let width = *p.n_m.iter().max().expect("validated non-empty");
    let mut columns = vec![Column::count("n_m"), Column::real("out_of_band_psd", "rad^2/t_p")];
    columns.extend((1..=width).map(|k| Column::real(&format!("lambda_{k}"), "1")));
    let mut table = Table::new("table1", columns);
    let objective = Objective {
        kind: ObjectiveKind::IntegratedPsdAboveCutoff {
            cutoff: p.cutoff_omega_tp_over_2pi,
            log_measure: p.log_measure,
        },
        convolution_sigma: 0.0,
        problem: None,
    };
    let options = SearchOptions {
        restarts: p.restarts,
        seed,
        max_evaluations: p.max_evaluations,
        ..SearchOptions::default()
    };
    for &n_m in &p.n_m {
        let r = optimize_coefficients(n_m, BasisMode::DerivativeBasis, &objective, 1.0, options)?;
        let mut row = vec![n_m as f64, r.objective_value];
        row.extend(r.coefficients.iter().copied());
        // Terms beyond n_m are absent from the expansion, i.e. zero.
        row.resize(2 + width, 0.0);
        table.push(row);
    }
    Ok(vec![table])
}

pub(super) fn drag_sweep(p: &DragSweepParams) -> Result<Vec<Table>> {
    let delta = 2.0 * PI * p.anharmonicity_over_2pi;
    let cases: Vec<(f64, f64)> = p
        .t_p_delta_over_2pi
        .iter()
        .flat_map(|t| p.drag_d.iter().map(move |d| (*t, *d)))
        .collect();
    let rows = cases
        .par_iter()
        .map(|&(length, d)| {
            let t_p = length * 2.0 * PI / delta.abs();
            let shape = hanning_envelope(p.n_samples, t_p, 1.0);
            let cal = calibrate_pulse(&shape, t_p, d, delta, p.target, p.model)?;
            Ok(vec![
                length,
                d,
                cal.err2_avg,
                cal.qubit_subspace_error,
                cal.amplitude,
                cal.detuning,
                cal.phase,
                cal.target_met as u8 as f64,
                cal.evaluations as f64,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(
        "drag_sweep",
        vec![
            Column::real("t_p_delta_over_2pi", "1"),
            Column::real("drag_d", "1"),
            Column::real("err2_avg", "1"),
            Column::real("qubit_subspace_error", "1"),
            Column::real("area", "rad"),
            Column::real("detuning", "rad/time"),
            Column::real("phase", "rad"),
            Column::count("target_met"),
            Column::count("evaluations"),
        ],
    );
    table.rows = rows;
    Ok(vec![table])
}
