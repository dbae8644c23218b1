// Copyright 2026 The fastadiabatic Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a TOML file with one `[parameters]` table per run.
//!
//! Physical quantities carry their unit in the field name. Times are in
//! units of the crossing period `T_x = 2π/ω_x` unless stated otherwise.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::adiabatic::Evaluator;
use crate::dynamics::{LevelModel, TargetRotation};
use crate::waveform::BasisMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    PsdWindows,
    ErrorCurve,
    LzSweep,
    CzPulse,
    Table1,
    DragSweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        Self::PsdWindows,
        Self::ErrorCurve,
        Self::LzSweep,
        Self::CzPulse,
        Self::Table1,
        Self::DragSweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PsdWindows => "psd-windows",
            Self::ErrorCurve => "error-curve",
            Self::LzSweep => "lz-sweep",
            Self::CzPulse => "cz-pulse",
            Self::Table1 => "table1",
            Self::DragSweep => "drag-sweep",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
                format!("unknown experiment `{s}`; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`; expected csv or json")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// One problem with one field of the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDiagnostic {
    pub field: String,
    pub message: String,
}

/// Every field-level problem found while loading a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigError {
    pub diagnostics: Vec<FieldDiagnostic>,
}

impl ConfigError {
    fn single(field: &str, message: impl Into<String>) -> Self {
        let mut e = Self::default();
        e.push(field, message);
        e
    }

    fn push(&mut self, field: &str, message: impl Into<String>) {
        self.diagnostics.push(FieldDiagnostic {
            field: field.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration")?;
        for d in &self.diagnostics {
            write!(f, "\n  {}: {}", d.field, d.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// Collects diagnostics for one experiment's parameters.
struct Check(ConfigError);

impl Check {
    fn field(name: &str) -> String {
        format!("parameters.{name}")
    }

    fn that(&mut self, ok: bool, name: &str, message: &str) {
        if !ok {
            self.0.push(&Self::field(name), message);
        }
    }

    fn positive(&mut self, name: &str, v: f64) {
        self.that(v > 0.0 && v.is_finite(), name, "must be positive and finite");
    }

    fn nonnegative(&mut self, name: &str, v: f64) {
        self.that(v >= 0.0 && v.is_finite(), name, "must be nonnegative and finite");
    }

    fn finite(&mut self, name: &str, values: &[f64]) {
        self.that(values.iter().all(|v| v.is_finite()), name, "must contain only finite numbers");
    }

    fn range(&mut self, lo_name: &str, lo: f64, hi: f64, n_name: &str, n: usize) {
        self.positive(lo_name, lo);
        self.that(hi.is_finite() && hi >= lo, lo_name, "lower end must not exceed the upper end");
        self.that(n >= 1, n_name, "must be at least 1");
        self.that(n > 1 || hi == lo, n_name, "a single point needs equal range ends");
    }

    fn angle(&mut self, name: &str, v: f64) {
        self.that(v > 0.0 && v < std::f64::consts::PI, name, "must lie strictly inside (0, π)");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Rectangular,
    Hanning,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    /// Constant precession frequency `omega0_over_omega_x · ω_x`.
    ConstantFrequency,
    /// Lab frame after remapping a constant-frequency shape.
    Remapped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PsdWindowsParams {
    /// Derivative-basis Fourier shape compared against the reference windows.
    pub coefficients: Vec<f64>,
    pub omega_tp_over_2pi_min: f64,
    pub omega_tp_over_2pi_max: f64,
    pub n_omega: usize,
    pub n_samples: usize,
    pub slepian_time_bandwidth: f64,
    pub cutoff_omega_tp_over_2pi: f64,
}

impl Default for PsdWindowsParams {
    fn default() -> Self {
        Self {
            coefficients: vec![1.0866, -0.0866],
            omega_tp_over_2pi_min: 0.1,
            omega_tp_over_2pi_max: 10.0,
            n_omega: 400,
            n_samples: 4097,
            slepian_time_bandwidth: 2.3,
            cutoff_omega_tp_over_2pi: 2.3,
        }
    }
}

impl PsdWindowsParams {
    fn check(&self, c: &mut Check) {
        c.that(!self.coefficients.is_empty(), "coefficients", "must hold at least one coefficient");
        c.finite("coefficients", &self.coefficients);
        c.that(
            self.coefficients.iter().sum::<f64>().abs() > 1e-12,
            "coefficients",
            "must not sum to zero",
        );
        c.range(
            "omega_tp_over_2pi_min",
            self.omega_tp_over_2pi_min,
            self.omega_tp_over_2pi_max,
            "n_omega",
            self.n_omega,
        );
        c.that(self.n_samples >= 16, "n_samples", "must be at least 16");
        c.that(
            self.slepian_time_bandwidth > 0.0 && self.slepian_time_bandwidth < self.n_samples as f64 / 2.0,
            "slepian_time_bandwidth",
            "must lie in (0, n_samples/2)",
        );
        c.positive("cutoff_omega_tp_over_2pi", self.cutoff_omega_tp_over_2pi);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ErrorCurveParams {
    pub window: WindowKind,
    pub basis: BasisMode,
    /// Shape coefficients, used when `window = "fourier"`.
    pub coefficients: Vec<f64>,
    pub frame: FrameKind,
    pub theta_i_rad: f64,
    pub theta_f_rad: f64,
    pub omega0_over_omega_x: f64,
    pub evaluator: Evaluator,
    pub t_p_over_tx_min: f64,
    pub t_p_over_tx_max: f64,
    pub n_points: usize,
    pub initial_samples: usize,
    pub max_samples: usize,
}

impl Default for ErrorCurveParams {
    fn default() -> Self {
        Self {
            window: WindowKind::Hanning,
            basis: BasisMode::DerivativeBasis,
            coefficients: Vec::new(),
            frame: FrameKind::ConstantFrequency,
            theta_i_rad: 0.75,
            theta_f_rad: 0.85,
            omega0_over_omega_x: 1.0,
            evaluator: Evaluator::Linearized,
            t_p_over_tx_min: 0.25,
            t_p_over_tx_max: 4.0,
            n_points: 64,
            initial_samples: 1025,
            max_samples: 65537,
        }
    }
}

impl ErrorCurveParams {
    fn check(&self, c: &mut Check) {
        if self.window == WindowKind::Fourier {
            c.that(!self.coefficients.is_empty(), "coefficients", "a fourier window needs coefficients");
        }
        c.finite("coefficients", &self.coefficients);
        if self.frame == FrameKind::Remapped {
            c.that(
                self.window != WindowKind::Rectangular,
                "window",
                "the remapped frame needs a Fourier-basis shape",
            );
        }
        c.angle("theta_i_rad", self.theta_i_rad);
        c.angle("theta_f_rad", self.theta_f_rad);
        c.positive("omega0_over_omega_x", self.omega0_over_omega_x);
        c.range("t_p_over_tx_min", self.t_p_over_tx_min, self.t_p_over_tx_max, "n_points", self.n_points);
        c.that(self.initial_samples >= 16, "initial_samples", "must be at least 16");
        c.that(self.max_samples >= self.initial_samples, "max_samples", "must be at least initial_samples");
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LzSweepParams {
    /// Half-range of the linear `H_z` ramp.
    pub span_over_h_x: Vec<f64>,
    pub ramp_rate_over_h_x2: Vec<f64>,
    pub evaluator: Evaluator,
    pub initial_samples: usize,
}

impl Default for LzSweepParams {
    fn default() -> Self {
        Self {
            span_over_h_x: vec![10.0, 12.5, 15.0, 17.5, 20.0],
            ramp_rate_over_h_x2: vec![0.341],
            evaluator: Evaluator::Exact,
            initial_samples: 1025,
        }
    }
}

impl LzSweepParams {
    fn check(&self, c: &mut Check) {
        c.that(!self.span_over_h_x.is_empty(), "span_over_h_x", "must not be empty");
        c.that(
            self.span_over_h_x.iter().all(|v| *v > 0.0 && v.is_finite()),
            "span_over_h_x",
            "entries must be positive",
        );
        c.that(!self.ramp_rate_over_h_x2.is_empty(), "ramp_rate_over_h_x2", "must not be empty");
        c.that(
            self.ramp_rate_over_h_x2.iter().all(|v| *v > 0.0 && v.is_finite()),
            "ramp_rate_over_h_x2",
            "entries must be positive",
        );
        c.that(self.initial_samples >= 16, "initial_samples", "must be at least 16");
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CzPulseParams {
    pub theta_i_rad: f64,
    /// Turning point of the out-and-back excursion.
    pub theta_f_rad: f64,
    pub n_coeffs: usize,
    /// Gaussian rounding of `H_z`; zero disables it.
    pub sigma_over_tx: f64,
    pub window_t_p_over_tx_min: f64,
    pub window_t_p_over_tx_max: f64,
    pub window_points: usize,
    pub n_samples: usize,
    pub restarts: usize,
    pub max_evaluations: usize,
    pub curve_t_p_over_tx_min: f64,
    pub curve_t_p_over_tx_max: f64,
    pub curve_points: usize,
}

impl Default for CzPulseParams {
    fn default() -> Self {
        Self {
            theta_i_rad: 0.1,
            theta_f_rad: 0.55 * std::f64::consts::FRAC_PI_2,
            n_coeffs: 3,
            sigma_over_tx: 0.0,
            window_t_p_over_tx_min: 1.0,
            window_t_p_over_tx_max: 2.5,
            window_points: 11,
            n_samples: 1024,
            restarts: 8,
            max_evaluations: 600,
            curve_t_p_over_tx_min: 0.5,
            curve_t_p_over_tx_max: 3.0,
            curve_points: 26,
        }
    }
}

impl CzPulseParams {
    fn check(&self, c: &mut Check) {
        c.angle("theta_i_rad", self.theta_i_rad);
        c.angle("theta_f_rad", self.theta_f_rad);
        c.that(self.theta_f_rad >= self.theta_i_rad, "theta_f_rad", "must not be below theta_i_rad");
        c.that(self.n_coeffs >= 1, "n_coeffs", "must be at least 1");
        c.nonnegative("sigma_over_tx", self.sigma_over_tx);
        c.range(
            "window_t_p_over_tx_min",
            self.window_t_p_over_tx_min,
            self.window_t_p_over_tx_max,
            "window_points",
            self.window_points,
        );
        c.range(
            "curve_t_p_over_tx_min",
            self.curve_t_p_over_tx_min,
            self.curve_t_p_over_tx_max,
            "curve_points",
            self.curve_points,
        );
        c.that(self.n_samples >= 16, "n_samples", "must be at least 16");
        c.that(self.restarts >= 1, "restarts", "must be at least 1");
        c.that(self.max_evaluations >= 1, "max_evaluations", "must be at least 1");
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Table1Params {
    pub n_m: Vec<usize>,
    pub cutoff_omega_tp_over_2pi: f64,
    /// Weight the out-of-band integral by `dω/ω`.
    pub log_measure: bool,
    pub restarts: usize,
    pub max_evaluations: usize,
}

impl Default for Table1Params {
    fn default() -> Self {
        Self {
            n_m: vec![2, 4, 10],
            cutoff_omega_tp_over_2pi: 2.3,
            log_measure: false,
            restarts: 8,
            max_evaluations: 20000,
        }
    }
}

impl Table1Params {
    fn check(&self, c: &mut Check) {
        c.that(!self.n_m.is_empty(), "n_m", "must list at least one expansion size");
        c.that(self.n_m.iter().all(|n| (1..=64).contains(n)), "n_m", "entries must lie in 1..=64");
        c.positive("cutoff_omega_tp_over_2pi", self.cutoff_omega_tp_over_2pi);
        c.that(self.restarts >= 1, "restarts", "must be at least 1");
        c.that(self.max_evaluations >= 1, "max_evaluations", "must be at least 1");
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DragSweepParams {
    pub drag_d: Vec<f64>,
    /// Pulse length as `t_p |Δ| / 2π`.
    pub t_p_delta_over_2pi: Vec<f64>,
    /// Anharmonicity `Δ/2π` in inverse time units; negative for transmons.
    pub anharmonicity_over_2pi: f64,
    pub n_samples: usize,
    pub target: TargetRotation,
    pub model: LevelModel,
}

impl Default for DragSweepParams {
    fn default() -> Self {
        Self {
            drag_d: vec![0.0, -0.24, -0.48, -0.72, -1.0, -1.2, -1.5],
            t_p_delta_over_2pi: vec![2.5],
            anharmonicity_over_2pi: -1.0,
            n_samples: 1001,
            target: TargetRotation::PiPulse,
            model: LevelModel::ThreeLevel,
        }
    }
}

impl DragSweepParams {
    fn check(&self, c: &mut Check) {
        c.that(!self.drag_d.is_empty(), "drag_d", "must not be empty");
        c.finite("drag_d", &self.drag_d);
        c.that(!self.t_p_delta_over_2pi.is_empty(), "t_p_delta_over_2pi", "must not be empty");
        c.that(
            self.t_p_delta_over_2pi.iter().all(|v| *v > 0.0 && v.is_finite()),
            "t_p_delta_over_2pi",
            "entries must be positive",
        );
        c.that(
            self.anharmonicity_over_2pi.is_finite() && self.anharmonicity_over_2pi != 0.0,
            "anharmonicity_over_2pi",
            "must be finite and nonzero",
        );
        c.that(self.n_samples >= 16, "n_samples", "must be at least 16");
    }
}

/// Typed parameters of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Parameters {
    PsdWindows(PsdWindowsParams),
    ErrorCurve(ErrorCurveParams),
    LzSweep(LzSweepParams),
    CzPulse(CzPulseParams),
    Table1(Table1Params),
    DragSweep(DragSweepParams),
}

impl Parameters {
    pub fn default_for(kind: ExperimentKind) -> Self {
        match kind {
            ExperimentKind::PsdWindows => Self::PsdWindows(Default::default()),
            ExperimentKind::ErrorCurve => Self::ErrorCurve(Default::default()),
            ExperimentKind::LzSweep => Self::LzSweep(Default::default()),
            ExperimentKind::CzPulse => Self::CzPulse(Default::default()),
            ExperimentKind::Table1 => Self::Table1(Default::default()),
            ExperimentKind::DragSweep => Self::DragSweep(Default::default()),
        }
    }

    pub fn kind(&self) -> ExperimentKind {
        match self {
            Self::PsdWindows(_) => ExperimentKind::PsdWindows,
            Self::ErrorCurve(_) => ExperimentKind::ErrorCurve,
            Self::LzSweep(_) => ExperimentKind::LzSweep,
            Self::CzPulse(_) => ExperimentKind::CzPulse,
            Self::Table1(_) => ExperimentKind::Table1,
            Self::DragSweep(_) => ExperimentKind::DragSweep,
        }
    }

    fn parse(kind: ExperimentKind, table: toml::Table) -> Result<Self, ConfigError> {
        fn typed<T: DeserializeOwned>(table: toml::Table) -> Result<T, ConfigError> {
            T::deserialize(toml::Value::Table(table)).map_err(|e| ConfigError::single("parameters", e.to_string().trim()))
        }
        Ok(match kind {
            ExperimentKind::PsdWindows => Self::PsdWindows(typed(table)?),
            ExperimentKind::ErrorCurve => Self::ErrorCurve(typed(table)?),
            ExperimentKind::LzSweep => Self::LzSweep(typed(table)?),
            ExperimentKind::CzPulse => Self::CzPulse(typed(table)?),
            ExperimentKind::Table1 => Self::Table1(typed(table)?),
            ExperimentKind::DragSweep => Self::DragSweep(typed(table)?),
        })
    }

    /// Field-level validation against the experiment's schema.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut c = Check(ConfigError::default());
        match self {
            Self::PsdWindows(p) => p.check(&mut c),
            Self::ErrorCurve(p) => p.check(&mut c),
            Self::LzSweep(p) => p.check(&mut c),
            Self::CzPulse(p) => p.check(&mut c),
            Self::Table1(p) => p.check(&mut c),
            Self::DragSweep(p) => p.check(&mut c),
        }
        if c.0.diagnostics.is_empty() {
            Ok(())
        } else {
            Err(c.0)
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    experiment: Option<ExperimentKind>,
    output_path: Option<PathBuf>,
    format: Option<Format>,
    seed: Option<u64>,
    #[serde(default)]
    parameters: toml::Table,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentKind,
    pub parameters: Parameters,
    pub output_path: PathBuf,
    pub format: Format,
    pub seed: u64,
    /// SHA-256 of the configuration text, hex encoded.
    pub config_sha256: String,
}

impl RunConfig {
    /// Parses and validates configuration text for `experiment`.
    pub fn from_toml(experiment: ExperimentKind, text: &str, overrides: Overrides) -> Result<Self, ConfigError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| {
            let field = e
                .span()
                .map(|s| format!("line {}", text[..s.start].lines().count().max(1)))
                .unwrap_or_else(|| "config".into());
            ConfigError::single(&field, e.message())
        })?;
        if let Some(k) = file.experiment {
            if k != experiment {
                return Err(ConfigError::single(
                    "experiment",
                    format!("file is for `{k}` but `{experiment}` was requested"),
                ));
            }
        }
        let parameters = Parameters::parse(experiment, file.parameters)?;
        parameters.validate()?;
        Ok(Self {
            experiment,
            parameters,
            output_path: overrides.output_path.or(file.output_path).unwrap_or_else(|| PathBuf::from("out")),
            format: overrides.format.or(file.format).unwrap_or_default(),
            seed: overrides.seed.or(file.seed).unwrap_or(0),
            config_sha256: hex::encode(Sha256::digest(text.as_bytes())),
        })
    }

    pub fn load(experiment: ExperimentKind, path: &Path, overrides: Overrides) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::single("--config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(experiment, &text, overrides)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        for kind in ExperimentKind::ALL {
            let c = RunConfig::from_toml(kind, "", Overrides::default()).unwrap();
            assert_eq!(c.parameters, Parameters::default_for(kind));
            assert_eq!(c.format, Format::Csv);
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in ExperimentKind::ALL {
            assert_eq!(kind.name().parse::<ExperimentKind>().unwrap(), kind);
        }
        assert!("table2".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn empty_coefficients_are_reported_by_field() {
        let e = RunConfig::from_toml(
            ExperimentKind::PsdWindows,
            "[parameters]\ncoefficients = []\n",
            Overrides::default(),
        )
        .unwrap_err();
        assert!(e.diagnostics.iter().any(|d| d.field == "parameters.coefficients"));
    }

    #[test]
    fn unknown_fields_and_mismatch_are_rejected() {
        let e = RunConfig::from_toml(ExperimentKind::Table1, "[parameters]\nn_mm = [2]\n", Overrides::default()).unwrap_err();
        assert!(e.to_string().contains("n_mm"));
        assert!(RunConfig::from_toml(ExperimentKind::Table1, "experiment = \"lz-sweep\"\n", Overrides::default()).is_err());
    }

    #[test]
    fn overrides_win_and_hash_tracks_text() {
        let a = RunConfig::from_toml(
            ExperimentKind::Table1,
            "seed = 3\nformat = \"csv\"\n",
            Overrides {
                seed: Some(9),
                format: Some(Format::Json),
                output_path: None,
            },
        )
        .unwrap();
        assert_eq!((a.seed, a.format), (9, Format::Json));
        let b = RunConfig::from_toml(ExperimentKind::Table1, "seed = 4\n", Overrides::default()).unwrap();
        assert_ne!(a.config_sha256, b.config_sha256);
        assert_eq!(a.config_sha256.len(), 64);
    }
}
