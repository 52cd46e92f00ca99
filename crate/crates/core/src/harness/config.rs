//! JSON input files: the scenario (with an optional deployment section) and
//! sweep specifications. Unknown keys are rejected.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::deployment::{Deployment, FixedIntervalLayout};
use crate::error::{Error, Result};
use crate::scenario::{self, Scenario, ScenarioParams};

use super::sweep::{Outputs, StrategyKind, SweepSpec, SweepVariable, Tolerances};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub speed_mps: f64,
    pub train_length_m: f64,
    pub d0_m: f64,
    #[serde(rename = "coverage_D_m")]
    pub coverage_d_m: f64,
    #[serde(default)]
    pub carrier_freq_hz: Option<f64>,
    #[serde(default)]
    pub wavelength_m: Option<f64>,
    pub antenna_gain: f64,
    pub calibration: CalibrationFile,
    pub c_th_bits: f64,
    #[serde(default)]
    pub deployment: Option<DeploymentFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CalibrationMode {
    MaxSnr,
    Physics,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationFile {
    pub mode: CalibrationMode,
    #[serde(default)]
    pub max_snr_db: Option<f64>,
    #[serde(default)]
    pub tx_power_w: Option<f64>,
    #[serde(default)]
    pub noise_density_w_per_hz: Option<f64>,
    #[serde(default)]
    pub noise_density_dbm_per_hz: Option<f64>,
    #[serde(default)]
    pub bandwidth_hz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeploymentKind {
    Equidistant,
    FixedInterval,
    Explicit,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeploymentFile {
    pub strategy: DeploymentKind,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub delta_m: Option<f64>,
    #[serde(default)]
    pub offsets_m: Option<Vec<f64>>,
    #[serde(default)]
    pub layout: Option<FixedIntervalLayout>,
}

fn missing(what: &str, mode: &str) -> Error {
    Error::InvalidParameter(format!("{what} is required for {mode}"))
}

fn unexpected(what: &str, mode: &str) -> Error {
    Error::InvalidParameter(format!("{what} is not allowed for {mode}"))
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn wavelength(&self) -> Result<f64> {
        match (self.carrier_freq_hz, self.wavelength_m) {
            (Some(f), None) => scenario::wavelength_from_frequency(f),
            (None, Some(w)) => Ok(w),
            _ => Err(Error::InvalidParameter(
                "exactly one of carrier_freq_hz and wavelength_m must be given".into(),
            )),
        }
    }

    pub fn snr0(&self) -> Result<f64> {
        let c = &self.calibration;
        match c.mode {
            CalibrationMode::MaxSnr => {
                let mode = "max_snr calibration";
                for (name, v) in [
                    ("tx_power_w", c.tx_power_w),
                    ("noise_density_w_per_hz", c.noise_density_w_per_hz),
                    ("noise_density_dbm_per_hz", c.noise_density_dbm_per_hz),
                    ("bandwidth_hz", c.bandwidth_hz),
                ] {
                    if v.is_some() {
                        return Err(unexpected(name, mode));
                    }
                }
                let db = c.max_snr_db.ok_or_else(|| missing("max_snr_db", mode))?;
                scenario::calibrate_from_max_snr(db, self.d0_m)
            }
            CalibrationMode::Physics => {
                let mode = "physics calibration";
                if c.max_snr_db.is_some() {
                    return Err(unexpected("max_snr_db", mode));
                }
                let noise =
                    match (c.noise_density_w_per_hz, c.noise_density_dbm_per_hz) {
                        (Some(w), None) => w,
                        (None, Some(dbm)) => scenario::db_to_linear(dbm - 30.0),
                        _ => return Err(Error::InvalidParameter(
                            "exactly one of noise_density_w_per_hz and noise_density_dbm_per_hz \
                             must be given"
                                .into(),
                        )),
                    };
                scenario::calibrate_from_physics(
                    c.tx_power_w.ok_or_else(|| missing("tx_power_w", mode))?,
                    self.antenna_gain,
                    self.wavelength()?,
                    noise,
                    c.bandwidth_hz
                        .ok_or_else(|| missing("bandwidth_hz", mode))?,
                )
            }
        }
    }

    pub fn scenario(&self) -> Result<Scenario> {
        Scenario::new(ScenarioParams {
            speed_mps: self.speed_mps,
            train_length_m: self.train_length_m,
            d0_m: self.d0_m,
            coverage_m: self.coverage_d_m,
            wavelength_m: self.wavelength()?,
            antenna_gain: self.antenna_gain,
            snr0: self.snr0()?,
            rate_threshold: self.c_th_bits,
        })
    }

    /// The deployment section resolved against `scenario`.
    pub fn deployment(&self, scenario: &Scenario) -> Result<Deployment> {
        self.deployment
            .as_ref()
            .ok_or_else(|| Error::Usage("scenario file has no deployment section".into()))?
            .resolve(scenario)
    }
}

impl DeploymentFile {
    pub fn resolve(&self, scenario: &Scenario) -> Result<Deployment> {
        match self.strategy {
            DeploymentKind::Equidistant => {
                let mode = "equidistant deployment";
                if self.delta_m.is_some() {
                    return Err(unexpected("delta_m", mode));
                }
                if self.offsets_m.is_some() {
                    return Err(unexpected("offsets_m", mode));
                }
                if self.layout.is_some() {
                    return Err(unexpected("layout", mode));
                }
                Deployment::equidistant(scenario, self.n.ok_or_else(|| missing("n", mode))?)
            }
            DeploymentKind::FixedInterval => {
                let mode = "fixed_interval deployment";
                if self.offsets_m.is_some() {
                    return Err(unexpected("offsets_m", mode));
                }
                Deployment::fixed_interval(
                    scenario,
                    self.n.ok_or_else(|| missing("n", mode))?,
                    self.delta_m.ok_or_else(|| missing("delta_m", mode))?,
                    self.layout.unwrap_or_default(),
                )
            }
            DeploymentKind::Explicit => {
                let mode = "explicit deployment";
                if self.delta_m.is_some() {
                    return Err(unexpected("delta_m", mode));
                }
                if self.layout.is_some() {
                    return Err(unexpected("layout", mode));
                }
                let offsets = self
                    .offsets_m
                    .clone()
                    .ok_or_else(|| missing("offsets_m", mode))?;
                if let Some(n) = self.n {
                    if n != offsets.len() {
                        return Err(Error::InvalidCount {
                            count: n,
                            reason: format!("offsets_m lists {} antennas", offsets.len()),
                        });
                    }
                }
                Deployment::explicit(scenario, offsets)
            }
        }
    }
}

/// SHA-256 over the validated scenario parameters, in hex.
pub fn scenario_hash(scenario: &Scenario) -> String {
    let p = scenario.params();
    let canonical = format!(
        "speed={:e};length={:e};d0={:e};coverage={:e};wavelength={:e};gain={:e};snr0={:e};cth={:e}",
        p.speed_mps,
        p.train_length_m,
        p.d0_m,
        p.coverage_m,
        p.wavelength_m,
        p.antenna_gain,
        p.snr0,
        p.rate_threshold
    );
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub strategies: Vec<StrategyKind>,
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub antenna_count: Option<usize>,
    #[serde(default)]
    pub delta_m: Option<f64>,
    #[serde(default)]
    pub layout: Option<FixedIntervalLayout>,
    #[serde(default)]
    pub c_th_bits: Option<f64>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub scan_step_s: Option<f64>,
    #[serde(default)]
    pub refine_tol_s: Option<f64>,
    #[serde(default)]
    pub trace_step_s: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Service,
    Otr,
    Trace,
}

impl SweepFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn into_spec(self) -> Result<SweepSpec> {
        let defaults = Tolerances::default();
        let spec = SweepSpec {
            variable: self.variable,
            values: self.values,
            strategies: self.strategies,
            outputs: Outputs {
                service: self.outputs.contains(&OutputKind::Service),
                otr: self.outputs.contains(&OutputKind::Otr),
                trace: self.outputs.contains(&OutputKind::Trace),
            },
            antenna_count: self.antenna_count,
            delta: self.delta_m,
            layout: self.layout.unwrap_or_default(),
            threshold: self.c_th_bits,
            tolerances: Tolerances {
                rel_tol: self.rel_tol.unwrap_or(defaults.rel_tol),
                scan_step: self.scan_step_s,
                refine_tol: self.refine_tol_s.unwrap_or(defaults.refine_tol),
                trace_step: self.trace_step_s.unwrap_or(defaults.trace_step),
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}
