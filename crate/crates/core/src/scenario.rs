//! Physical link parameters shared by every other module.
//!
//! The channel is modeled entirely through the linear constant `snr0`: an
//! antenna at distance `d` from the base station sees `SNR = snr0 / d²`.
//! Decibels only appear at the input boundary (`calibrate_from_max_snr`).

use std::f64::consts::PI;

use crate::error::{require, Result};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Converts decibels to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a carrier frequency to its wavelength.
pub fn wavelength_from_frequency(freq_hz: f64) -> Result<f64> {
    require(freq_hz.is_finite() && freq_hz > 0.0, || {
        format!("carrier frequency must be positive, got {freq_hz}")
    })?;
    Ok(SPEED_OF_LIGHT / freq_hz)
}

/// Chooses `snr0` so that the SNR at closest approach (`d0`) equals `max_snr_db`.
pub fn calibrate_from_max_snr(max_snr_db: f64, d0: f64) -> Result<f64> {
    require(d0.is_finite() && d0 > 0.0, || {
        format!("closest-approach distance must be positive, got {d0}")
    })?;
    require(max_snr_db.is_finite(), || {
        format!("maximum SNR must be finite, got {max_snr_db}")
    })?;
    Ok(db_to_linear(max_snr_db) * d0 * d0)
}

/// Builds `snr0 = Pt·Gl·λ² / ((4π)²·N0·B)` from the free-space link budget.
pub fn calibrate_from_physics(
    tx_power_w: f64,
    antenna_gain: f64,
    wavelength_m: f64,
    noise_density_w_per_hz: f64,
    bandwidth_hz: f64,
) -> Result<f64> {
    for (name, value) in [
        ("transmit power", tx_power_w),
        ("antenna gain", antenna_gain),
        ("wavelength", wavelength_m),
        ("noise density", noise_density_w_per_hz),
        ("bandwidth", bandwidth_hz),
    ] {
        require(value.is_finite() && value > 0.0, || {
            format!("{name} must be positive, got {value}")
        })?;
    }
    let four_pi_sq = (4.0 * PI) * (4.0 * PI);
    Ok(tx_power_w * antenna_gain * wavelength_m * wavelength_m
        / (four_pi_sq * noise_density_w_per_hz * bandwidth_hz))
}

/// Unvalidated scenario fields; turn into a [`Scenario`] with [`Scenario::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    pub speed_mps: f64,
    pub train_length_m: f64,
    pub d0_m: f64,
    pub coverage_m: f64,
    pub wavelength_m: f64,
    pub antenna_gain: f64,
    pub snr0: f64,
    pub rate_threshold: f64,
}

/// A validated, immutable set of link parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    params: ScenarioParams,
}

impl Scenario {
    pub fn new(params: ScenarioParams) -> Result<Self> {
        let p = &params;
        for (name, value) in [
            ("speed", p.speed_mps),
            ("train length", p.train_length_m),
            ("minimum distance d0", p.d0_m),
            ("coverage D", p.coverage_m),
            ("wavelength", p.wavelength_m),
            ("antenna gain", p.antenna_gain),
            ("snr0", p.snr0),
        ] {
            require(value.is_finite() && value > 0.0, || {
                format!("{name} must be positive and finite, got {value}")
            })?;
        }
        require(
            p.rate_threshold.is_finite() && p.rate_threshold >= 0.0,
            || {
                format!(
                    "rate threshold must be non-negative, got {}",
                    p.rate_threshold
                )
            },
        )?;
        let half = p.coverage_m / (2.0 * p.speed_mps);
        require(half.is_finite() && half > 0.0, || {
            format!("observation half-window must be positive, got {half}")
        })?;
        Ok(Self { params })
    }

    /// The reference link: 100 m/s, 2 GHz carrier, 5 dB peak SNR at d0 = 50 m,
    /// a 200 m train and a 1200 m serving span (window [-6 s, 6 s]).
    pub fn reference() -> Self {
        let d0 = 50.0;
        let params = ScenarioParams {
            speed_mps: 100.0,
            train_length_m: 200.0,
            d0_m: d0,
            coverage_m: 1200.0,
            wavelength_m: SPEED_OF_LIGHT / 2.0e9,
            antenna_gain: 1.0,
            snr0: calibrate_from_max_snr(5.0, d0).expect("valid constants"),
            rate_threshold: 0.15,
        };
        Self::new(params).expect("reference scenario is valid")
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn speed(&self) -> f64 {
        self.params.speed_mps
    }

    pub fn train_length(&self) -> f64 {
        self.params.train_length_m
    }

    pub fn d0(&self) -> f64 {
        self.params.d0_m
    }

    pub fn coverage(&self) -> f64 {
        self.params.coverage_m
    }

    pub fn wavelength(&self) -> f64 {
        self.params.wavelength_m
    }

    pub fn antenna_gain(&self) -> f64 {
        self.params.antenna_gain
    }

    pub fn snr0(&self) -> f64 {
        self.params.snr0
    }

    pub fn rate_threshold(&self) -> f64 {
        self.params.rate_threshold
    }

    /// Minimum allowed separation between two antennas (half a wavelength).
    pub fn min_spacing(&self) -> f64 {
        self.params.wavelength_m / 2.0
    }

    /// Per-antenna SNR at distance `d`.
    pub fn snr_at(&self, distance: f64) -> f64 {
        self.params.snr0 / (distance * distance)
    }

    /// `(-D/2v, +D/2v)`: the span during which this base station serves the train.
    pub fn observation_window(&self) -> (f64, f64) {
        let half = self.params.coverage_m / (2.0 * self.params.speed_mps);
        (-half, half)
    }

    /// Total window length `T = D/v`.
    pub fn duration(&self) -> f64 {
        self.params.coverage_m / self.params.speed_mps
    }

    fn with(&self, edit: impl FnOnce(&mut ScenarioParams)) -> Result<Self> {
        let mut params = self.params.clone();
        edit(&mut params);
        Self::new(params)
    }

    pub fn with_train_length(&self, length_m: f64) -> Result<Self> {
        self.with(|p| p.train_length_m = length_m)
    }

    pub fn with_d0(&self, d0_m: f64) -> Result<Self> {
        self.with(|p| p.d0_m = d0_m)
    }

    pub fn with_snr0(&self, snr0: f64) -> Result<Self> {
        self.with(|p| p.snr0 = snr0)
    }

    pub fn with_rate_threshold(&self, threshold: f64) -> Result<Self> {
        self.with(|p| p.rate_threshold = threshold)
    }
}
