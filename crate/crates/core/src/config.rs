//! Run configuration in I/O units.
//!
//! Frequencies are given as `f/2π` in MHz and times in ns, with the unit in
//! every key name; conversion to rad/s and seconds happens on ingestion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{angular_to_mhz, mhz_to_angular, Model, QubitParams, SystemParams};
use crate::propagator::{IntegratorConfig, DEFAULT_RENORMALIZE_EVERY};
use crate::rwa::{AnalyticGateKind, DEFAULT_SEPARATION_THRESHOLD};

pub const NS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(rename = "J1_over_2pi_MHz")]
    pub static_z1: f64,
    #[serde(rename = "J2_over_2pi_MHz")]
    pub static_z2: f64,
    #[serde(rename = "h1_over_2pi_MHz")]
    pub static_x1: f64,
    #[serde(rename = "h2_over_2pi_MHz")]
    pub static_x2: f64,
    #[serde(rename = "j1_over_2pi_MHz")]
    pub drive_amplitude1: f64,
    #[serde(rename = "j2_over_2pi_MHz")]
    pub drive_amplitude2: f64,
    #[serde(rename = "omega1_over_2pi_MHz")]
    pub drive_frequency1: f64,
    #[serde(rename = "omega2_over_2pi_MHz")]
    pub drive_frequency2: f64,
    #[serde(rename = "alpha_over_2pi_MHz")]
    pub coupling: f64,
}

impl SystemConfig {
    pub fn to_params(&self) -> SystemParams {
        let q = |j: f64, amp: f64, h: f64, w: f64| QubitParams {
            static_z: mhz_to_angular(j),
            drive_amplitude: mhz_to_angular(amp),
            static_x: mhz_to_angular(h),
            drive_frequency: mhz_to_angular(w),
        };
        SystemParams {
            qubits: [
                q(self.static_z1, self.drive_amplitude1, self.static_x1, self.drive_frequency1),
                q(self.static_z2, self.drive_amplitude2, self.static_x2, self.drive_frequency2),
            ],
            coupling: mhz_to_angular(self.coupling),
        }
    }

    pub fn from_params(p: &SystemParams) -> Self {
        let [a, b] = p.qubits;
        SystemConfig {
            static_z1: angular_to_mhz(a.static_z),
            static_z2: angular_to_mhz(b.static_z),
            static_x1: angular_to_mhz(a.static_x),
            static_x2: angular_to_mhz(b.static_x),
            drive_amplitude1: angular_to_mhz(a.drive_amplitude),
            drive_amplitude2: angular_to_mhz(b.drive_amplitude),
            drive_frequency1: angular_to_mhz(a.drive_frequency),
            drive_frequency2: angular_to_mhz(b.drive_frequency),
            coupling: angular_to_mhz(p.coupling),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSettings {
    /// Maximum step; `None` selects 1/200 of the fastest period.
    #[serde(default)]
    pub dt_ns: Option<f64>,
    #[serde(default = "default_renormalize")]
    pub renormalize_every: usize,
}

fn default_renormalize() -> usize {
    DEFAULT_RENORMALIZE_EVERY
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings { dt_ns: None, renormalize_every: DEFAULT_RENORMALIZE_EVERY }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub t_start_ns: f64,
    pub t_end_ns: f64,
    pub n_points: usize,
}

impl SweepConfig {
    /// Evenly spaced times in seconds, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.n_points;
        let (a, b) = (self.t_start_ns * NS, self.t_end_ns * NS);
        (0..n)
            .map(|k| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    #[serde(default)]
    pub integrator: IntegratorSettings,
    pub sweep: SweepConfig,
    #[serde(default = "default_gate_kind")]
    pub gate_kind: AnalyticGateKind,
    #[serde(default)]
    pub echo: bool,
    /// Gate time for single-time studies (tomography, regime check).
    #[serde(default)]
    pub gate_time_ns: Option<f64>,
    #[serde(default = "default_threshold")]
    pub regime_threshold: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<OutputConfig>,
}

fn default_gate_kind() -> AnalyticGateKind {
    AnalyticGateKind::TwoRwaZz
}

fn default_threshold() -> f64 {
    DEFAULT_SEPARATION_THRESHOLD
}

fn field_error(field: &str, reason: impl Into<String>) -> Error {
    Error::Config { field: field.into(), reason: reason.into() }
}

impl RunConfig {
    /// Parses and validates; syntax errors carry line and column.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s).map_err(|e| field_error("<document>", e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.sweep;
        if s.n_points < 2 {
            return Err(field_error("sweep.n_points", format!("must be at least 2 (got {})", s.n_points)));
        }
        if !(s.t_start_ns.is_finite() && s.t_start_ns >= 0.0) {
            return Err(field_error("sweep.t_start_ns", "must be finite and non-negative"));
        }
        if !(s.t_end_ns.is_finite() && s.t_end_ns > s.t_start_ns) {
            return Err(field_error("sweep.t_end_ns", "must exceed sweep.t_start_ns"));
        }
        if let Some(t) = self.gate_time_ns {
            if !(t.is_finite() && t >= 0.0) {
                return Err(field_error("gate_time_ns", "must be finite and non-negative"));
            }
        }
        if !(self.regime_threshold.is_finite() && self.regime_threshold > 1.0) {
            return Err(field_error("regime_threshold", "must be greater than 1"));
        }
        if let Some(dt) = self.integrator.dt_ns {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(field_error("integrator.dt_ns", "must be positive"));
            }
        }
        if self.integrator.renormalize_every == 0 {
            return Err(field_error("integrator.renormalize_every", "must be at least 1"));
        }
        let model = self.model()?;
        self.integrator(&model)
            .check(model.fastest_drive_frequency())
            .map_err(|e| field_error("integrator.dt_ns", e.to_string()))
    }

    pub fn model(&self) -> Result<Model> {
        Model::new(self.system.to_params()).map_err(|e| field_error("system", e.to_string()))
    }

    pub fn integrator(&self, model: &Model) -> IntegratorConfig {
        let default = IntegratorConfig::default_for(model);
        IntegratorConfig {
            dt: self.integrator.dt_ns.map_or(default.dt, |dt| dt * NS),
            renormalize_every: self.integrator.renormalize_every,
        }
    }

    /// Gate time in seconds: `gate_time_ns`, else the end of the sweep.
    pub fn gate_time(&self) -> f64 {
        self.gate_time_ns.unwrap_or(self.sweep.t_end_ns) * NS
    }
}
