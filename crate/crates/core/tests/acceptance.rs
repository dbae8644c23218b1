// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line
//! with the measured numbers; the process exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use fastadiabatic::adiabatic::{
    converged_error, geometric_error, landau_zener_error, landau_zener_time, Evaluator, Sampling, WaveformFamily,
};
use fastadiabatic::dynamics::{
    calibrate_pulse, drag_envelope, evolve_two_level_direct, evolve_two_level_exact, hanning_envelope, LevelModel,
    TargetRotation,
};
use fastadiabatic::error::Result;
use fastadiabatic::optimize::{
    exact_error, optimize_coefficients, optimize_cz_pulse, ConvolvedFamily, ExactProblem, Objective, ObjectiveKind,
    SearchOptions,
};
use fastadiabatic::quadrature::{self, linspace};
use fastadiabatic::remap::{build_remap_with, invert_remap_at, RemapParams, RemappedFamily};
use fastadiabatic::spectrum::{fourier_integral_complex, hanning_psd, psd, rectangular_psd};
use fastadiabatic::trajectory::{Frame, SampledTrajectory};
use fastadiabatic::waveform::{BasisMode, FourierWaveform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Crossing period `2π/ω_x` for `h_x = 1`.
const TX: f64 = PI;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn within_budget(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let reference: [&[f64]; 3] = [
        &[1.0866, -0.0866],
        &[1.0751, -0.0811, 0.0017, 0.0044],
        &[1.0280, -0.0606, 0.0052, 0.0055, 0.0047, 0.0046, 0.0035],
    ];
    let options = SearchOptions {
        max_evaluations: 20000,
        ..SearchOptions::default()
    };
    let run = |cutoff: f64, log_measure: bool| -> Vec<(usize, Vec<f64>, f64)> {
        let objective = Objective {
            kind: ObjectiveKind::IntegratedPsdAboveCutoff { cutoff, log_measure },
            convolution_sigma: 0.0,
            problem: None,
        };
        [2usize, 4, 10]
            .iter()
            .zip(reference)
            .map(|(&n_m, want)| {
                let r = optimize_coefficients(n_m, BasisMode::DerivativeBasis, &objective, 1.0, options).unwrap();
                let tol = if n_m == 2 { 0.005 } else { 0.01 };
                let worst = want
                    .iter()
                    .zip(&r.coefficients)
                    .map(|(a, b)| (a - b).abs() / tol)
                    .fold(0.0, f64::max);
                (n_m, r.coefficients, worst)
            })
            .collect()
    };
    let fmt = |rows: &[(usize, Vec<f64>, f64)]| {
        rows.iter()
            .map(|(n, c, w)| {
                let shown: Vec<String> = c.iter().take(7).map(|v| format!("{v:.4}")).collect();
                format!("n_m={n} [{}] (worst/tol {w:.2})", shown.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    let stated = run(2.3, false);
    let elapsed = start.elapsed();
    let pass = stated.iter().all(|r| r.2 <= 1.0) && within_budget(elapsed, 60.0);
    let alt = run(2.156, true);
    println!(
        "INFO criterion 1: cutoff 2.156 with d(ln ω) weighting gives {} (all within tolerance: {})",
        fmt(&alt),
        alt.iter().all(|r| r.2 <= 1.0)
    );
    verdict(pass, format!("cutoff 2.3, dω weighting: {}; {:.2?}", fmt(&stated), elapsed))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let n = 4097;
    let (t_p, dtheta) = (1.0, 1.0);
    let dt = t_p / (n - 1) as f64;
    let rect = vec![dtheta / t_p; n];
    let hann: Vec<f64> = linspace(0.0, t_p, n)
        .iter()
        .map(|t| dtheta / t_p * (1.0 - (2.0 * PI * t / t_p).cos()))
        .collect();
    let x: Vec<f64> = linspace(0.1, 10.0, 2000)
        .into_iter()
        .filter(|x| (x - x.round()).abs() > 1e-3)
        .collect();
    let omegas: Vec<f64> = x.iter().map(|v| 2.0 * PI * v / t_p).collect();
    let s_rect = psd(&rect, dt, &omegas).unwrap();
    let s_hann = psd(&hann, dt, &omegas).unwrap();
    let mut worst: f64 = 0.0;
    for (k, w) in omegas.iter().enumerate() {
        worst = worst.max((s_rect.values[k] / rectangular_psd(dtheta, t_p, *w) - 1.0).abs());
        worst = worst.max((s_hann.values[k] / hanning_psd(dtheta, t_p, *w) - 1.0).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        worst < 1e-6 && within_budget(elapsed, 5.0),
        format!("max relative deviation {worst:.2e} over {} frequencies; {elapsed:.2?}", x.len()),
    )
}

fn criterion_3() -> Verdict {
    let mut worst: f64 = 0.0;
    let cases = [
        (BasisMode::DerivativeBasis, vec![1.0], 0.7, 0.9, 2.0, 1.3),
        (BasisMode::DerivativeBasis, vec![1.0866, -0.0866], 0.5, 0.6, 2.0, 0.8),
        (BasisMode::DerivativeBasis, vec![0.9, 0.2, -0.1], 1.2, 1.0, 3.0, 2.7),
        (BasisMode::ThetaBasis, vec![0.5, -0.1, 0.0], 0.4, 0.6, 1.7, 1.9),
    ];
    for (mode, shape, ti, tf, omega, t_p) in cases {
        let w = FourierWaveform::from_shape(mode, &shape, t_p, ti, tf).unwrap();
        let traj = SampledTrajectory::from_waveform(&w, Frame::ConstantFrequency { omega }, 4097).unwrap();
        let lin = geometric_error(&traj).p_e;
        let s = psd(traj.dtheta_dt(), traj.dt(), &[omega]).unwrap().values[0];
        worst = worst.max((lin - 0.25 * s).abs() / (0.25 * s).max(1e-300));
    }
    verdict(worst < 1e-10, format!("max relative |P_e - S(ω₀)/4| = {worst:.2e} over 4 waveforms"))
}

fn lz_exact(span: f64, rate: f64) -> f64 {
    let family = |t_p: f64, n: usize| {
        let h_z = linspace(-span, span, n);
        SampledTrajectory::from_h_z(1.0, t_p, &h_z, &vec![rate; n])
    };
    converged_error(&family, 2.0 * span / rate, Evaluator::Exact, Sampling::default())
        .unwrap()
        .p_e
}

fn criterion_4() -> Verdict {
    let rate = 0.341;
    let formula = landau_zener_error(1.0, rate).unwrap();
    let spans = [10.0, 12.5, 15.0, 17.5, 20.0];
    let devs: Vec<f64> = spans.iter().map(|s| (lz_exact(*s, rate) / 1e-4 - 1.0).abs()).collect();
    let to_formula: Vec<f64> = spans.iter().map(|s| (lz_exact(*s, rate) / formula - 1.0).abs()).collect();
    let monotone = to_formula.windows(2).all(|w| w[1] < w[0]);
    verdict(
        devs[0] < 0.15 && monotone,
        format!(
            "span ±10: |P_e/1e-4 - 1| = {:.3}; deviation from exp(-π/rate) vs span {:?} = {:?}",
            devs[0],
            spans,
            to_formula.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>()
        ),
    )
}

fn sustained_max(family: &dyn WaveformFamily, lo: f64, hi: f64, n: usize) -> f64 {
    let curve = fastadiabatic::adiabatic::error_curve(
        family,
        &linspace(lo * TX, hi * TX, n),
        Evaluator::Exact,
        Sampling {
            initial: 2049,
            ..Sampling::default()
        },
    )
    .unwrap();
    assert!(curve.failures.is_empty(), "{:?}", curve.failures);
    curve.p_e().into_iter().fold(0.0, f64::max)
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let (ti, tf) = (1.0f64.atan2(-10.0), 1.0f64.atan2(10.0));
    let family = RemappedFamily::new(BasisMode::DerivativeBasis, &[1.086, -0.086], ti, tf, RemapParams::default()).unwrap();
    let scan = fastadiabatic::adiabatic::error_curve(
        &family,
        &linspace(0.8 * TX, 1.5 * TX, 29),
        Evaluator::Exact,
        Sampling::default(),
    )
    .unwrap();
    let (best_t, best_p) = scan
        .points
        .iter()
        .map(|p| (p.t_p / TX, p.p_e))
        .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });

    let problem = ExactProblem {
        theta_i: ti,
        theta_f: tf,
        remap: RemapParams::default(),
        n_samples: 1024,
    };
    let (lo, hi) = (1.0, 2.0);
    let objective = Objective {
        kind: ObjectiveKind::ExactErrorMaxOverWindow {
            t_min: lo * TX,
            t_max: hi * TX,
            n_points: 11,
        },
        convolution_sigma: 0.0,
        problem: Some(problem),
    };
    let options = SearchOptions {
        restarts: 2,
        max_evaluations: 400,
        ..SearchOptions::default()
    };
    let r = optimize_coefficients(3, BasisMode::DerivativeBasis, &objective, 1.0, options).unwrap();
    let tuned = RemappedFamily::new(BasisMode::DerivativeBasis, &r.coefficients, ti, tf, RemapParams::default()).unwrap();
    let sustained = sustained_max(&tuned, lo, hi, 41);
    let lz = landau_zener_time(1.0, 20.0, 1e-4).unwrap() / TX;
    let speedup = lz / lo;
    let elapsed = start.elapsed();
    let pass = best_p < 1e-4 && sustained < 1e-4 && speedup > 10.0 && within_budget(elapsed, 300.0);
    verdict(
        pass,
        format!(
            "{{1.086, -0.086}}: min P_e {best_p:.2e} at t_p = {best_t:.3} T_x; re-optimized {:?}: max P_e {sustained:.2e} \
             over [{lo}, {hi}] T_x; Landau-Zener needs {lz:.2} T_x ({speedup:.1}x); {elapsed:.2?}",
            r.coefficients.iter().map(|c| format!("{c:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let (ti, tf) = (0.1, 0.55 * PI / 2.0);
    let plain = optimize_cz_pulse(ti, tf, 3, 0.0, (1.0 * TX, 2.5 * TX, 11), 1024, SearchOptions {
        max_evaluations: 600,
        ..SearchOptions::default()
    })
    .unwrap();
    let lam2 = plain.coefficients[1];
    let plain_family = RemappedFamily::new(BasisMode::ThetaBasis, &plain.coefficients, ti, tf, RemapParams::default()).unwrap();
    let at_one = converged_error(&plain_family, 1.0 * TX, Evaluator::Exact, Sampling::default()).unwrap().p_e;

    let sigma = 0.05 * TX;
    let problem = ExactProblem {
        theta_i: ti,
        theta_f: tf,
        remap: RemapParams::default(),
        n_samples: 1024,
    };
    let unrounded_after_rounding = exact_error(BasisMode::ThetaBasis, &plain.coefficients, &problem, sigma, &[1.5 * TX]).unwrap();
    let (lo, hi) = (1.8, 2.6);
    let rounded = optimize_cz_pulse(ti, tf, 3, sigma, (lo * TX, hi * TX, 9), 1024, SearchOptions {
        restarts: 4,
        max_evaluations: 500,
        ..SearchOptions::default()
    })
    .unwrap();
    let family = ConvolvedFamily {
        inner: RemappedFamily::new(BasisMode::ThetaBasis, &rounded.coefficients, ti, tf, RemapParams::default()).unwrap(),
        sigma,
        h_x: 1.0,
    };
    let sustained = sustained_max(&family, lo, hi, 17);
    let elapsed = start.elapsed();
    let pass = (lam2 + 0.19).abs() <= 0.03 && at_one < 1e-4 && sustained < 1e-4;
    verdict(
        pass,
        format!(
            "no rounding λ' = {:?} rad, P_e(1 T_x) = {at_one:.2e}; rounding σ = 0.05 T_x raises its P_e(1.5 T_x) to \
             {unrounded_after_rounding:.2e}; re-optimized λ' = {:?} rad holds P_e <= {sustained:.2e} over [{lo}, {hi}] T_x; {elapsed:.2?}",
            plain.coefficients.iter().map(|c| format!("{c:.4}")).collect::<Vec<_>>(),
            rounded.coefficients.iter().map(|c| format!("{c:.4}")).collect::<Vec<_>>()
        ),
    )
}

/// Random lab-frame Fourier trajectories in both bases.
fn corpus() -> Vec<SampledTrajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..50)
        .map(|k| {
            let mode = if k % 2 == 0 { BasisMode::DerivativeBasis } else { BasisMode::ThetaBasis };
            let n_terms = rng.gen_range(1..=4);
            let mut shape = vec![1.0];
            for _ in 1..n_terms {
                shape.push(rng.gen_range(-0.15..0.15));
            }
            let ti = rng.gen_range(0.4..1.4);
            let tf = ti + rng.gen_range(-0.35..0.35);
            let t_p = rng.gen_range(1.0..4.0) * TX;
            let w = FourierWaveform::from_shape(mode, &shape, t_p, ti, tf).unwrap();
            SampledTrajectory::from_waveform(&w, Frame::Lab { h_x: 1.0 }, 2049).unwrap()
        })
        .collect()
}

fn criterion_7(corpus: &[SampledTrajectory]) -> Verdict {
    let mut worst_dp: f64 = 0.0;
    let mut worst_drift: f64 = 0.0;
    for traj in corpus {
        let a = evolve_two_level_exact(traj).unwrap().p_e;
        let b = evolve_two_level_direct(traj).unwrap();
        worst_dp = worst_dp.max((a - b.p_e).abs());
        worst_drift = worst_drift.max(b.unitarity_drift).max(b.norm_drift);
    }
    verdict(
        worst_dp < 1e-8 && worst_drift < 1e-9,
        format!("max |ΔP_e| = {worst_dp:.2e}, max unitarity drift = {worst_drift:.2e} over {} trajectories", corpus.len()),
    )
}

fn criterion_8(corpus: &[SampledTrajectory]) -> Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for traj in corpus {
        let exact = evolve_two_level_exact(traj)?.p_e;
        if exact < 1e-3 {
            count += 1;
            let lin = geometric_error(traj).p_e;
            worst = worst.max((lin - exact).abs() / exact);
        }
    }
    Ok(verdict(
        worst < 0.15 && count > 0,
        format!("{count} trajectories with P_e < 1e-3; max relative deviation {worst:.3}"),
    ))
}

fn criterion_9() -> Verdict {
    let start = Instant::now();
    let delta = -2.0 * PI;
    let t_p = 2.5 * 2.0 * PI / delta.abs();
    let n = 1001;
    let shape = hanning_envelope(n, t_p, 1.0);
    let err2 = |d: f64| {
        calibrate_pulse(&shape, t_p, d, delta, TargetRotation::PiPulse, LevelModel::ThreeLevel)
            .unwrap()
            .err2_avg
    };
    let (e0, e48, e120) = (err2(0.0), err2(-0.48), err2(-1.2));
    let dt = t_p / (n - 1) as f64;
    let env = drag_envelope(&shape, dt, -1.0, delta).unwrap();
    let at_delta = fourier_integral_complex(&env, dt, delta).norm() / quadrature::integrate(&shape, dt);
    let ratio = e48 / e0;
    let elapsed = start.elapsed();
    let pass = e120 <= e0 / 10.0 && (0.12..=0.5).contains(&ratio) && at_delta < 1e-5 && within_budget(elapsed, 120.0);
    verdict(
        pass,
        format!(
            "err2: D=0 {e0:.3e}, D=-0.48 {e48:.3e} (ratio {ratio:.3}), D=-1.2 {e120:.3e}; \
             |FT of D=-1 envelope at Δ| / area = {at_delta:.1e}; {elapsed:.2?}"
        ),
    )
}

fn criterion_10() -> Verdict {
    let (ti, tf) = (1.0f64.atan2(-10.0), 1.0f64.atan2(10.0));
    let family = RemappedFamily::new(BasisMode::DerivativeBasis, &[1.086, -0.086], ti, tf, RemapParams::default()).unwrap();
    let mut worst_frame: f64 = 0.0;
    for t_p in [0.9, 1.2, 1.5, 2.0] {
        let lab = geometric_error(&family.trajectory(t_p * TX, 8193).unwrap()).p_e;
        let tau = geometric_error(&family.tau_trajectory(t_p * TX, 8193).unwrap()).p_e;
        worst_frame = worst_frame.max((lab - tau).abs());
    }

    // Build the table on a coarse τ grid, then invert at lab times taken from
    // a grid four times finer and compare with the waveform evaluated there.
    let tau_p = 3.0;
    let w = FourierWaveform::from_shape(BasisMode::DerivativeBasis, &[1.086, -0.086], tau_p, ti, tf).unwrap();
    let (theta, rate) = w.sample(4097);
    let table = build_remap_with(&theta, Some(&rate), tau_p, RemapParams::default()).unwrap();
    let fine = build_remap_with(&w.sample(16385).0, Some(&w.sample(16385).1), tau_p, RemapParams::default()).unwrap();
    let back = invert_remap_at(&table, &fine.t_of_tau).unwrap();
    let worst_theta = back
        .iter()
        .zip(&fine.theta_of_tau)
        .map(|((a, _), b)| (a - b).abs())
        .fold(0.0, f64::max);
    verdict(
        worst_frame < 1e-8 && worst_theta < 1e-6,
        format!("max |P_e(lab) - P_e(τ)| = {worst_frame:.2e}; round-trip max |Δθ| = {worst_theta:.2e} rad"),
    )
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<(usize, &str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "out-of-band coefficient table", Box::new(criterion_1)),
        (2, "closed-form PSD oracles", Box::new(criterion_2)),
        (3, "linearized error equals S(ω₀)/4", Box::new(criterion_3)),
        (4, "Landau-Zener oracle", Box::new(criterion_4)),
        (5, "remapped two-term waveform", Box::new(criterion_5)),
        (6, "out-and-back CZ pulse", Box::new(criterion_6)),
        (7, "backend equivalence", Box::new(|| criterion_7(&corpus))),
        (8, "small-error limit", Box::new(|| criterion_8(&corpus).unwrap())),
        (9, "DRAG properties", Box::new(criterion_9)),
        (10, "remap correctness", Box::new(criterion_10)),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in &criteria {
        let v = check();
        println!("{} criterion {id}: {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed.push(*id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
