//! Window-level figures of merit: sampled capacity traces, the mobile
//! service integral and the outage time ratio.

pub mod intervals;
pub mod quadrature;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::capacity_at;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

pub use intervals::Interval;

/// Default relative tolerance for [`service_amount`].
pub const DEFAULT_REL_TOL: f64 = 1e-8;
/// Loosest tolerance [`service_amount`] accepts.
pub const MAX_REL_TOL: f64 = 1e-3;
/// Default bisection tolerance for outage edges, in seconds.
pub const DEFAULT_REFINE_TOL: f64 = 1e-7;
/// The default outage scan uses `T / DEFAULT_SCAN_DIVISIONS` as its step.
pub const DEFAULT_SCAN_DIVISIONS: f64 = 12_000.0;

/// Capacity sampled on a uniform grid spanning the observation window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityTrace {
    pub times: Vec<f64>,
    pub capacities: Vec<f64>,
    pub sample_step: f64,
}

impl CapacityTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn argmax(&self) -> Option<usize> {
        self.capacities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutageReport {
    pub threshold: f64,
    pub intervals: Vec<Interval>,
    pub otr: f64,
}

/// Samples `C(t)` at both window endpoints and every `sample_step` between.
///
/// When the window is not an exact multiple of `sample_step`, the step is
/// shrunk to the nearest value that divides it.
pub fn sample_trace<O>(scenario: &Scenario, offsets: &O, sample_step: f64) -> Result<CapacityTrace>
where
    O: AsRef<[f64]> + Sync + ?Sized,
{
    let total = scenario.duration();
    if !(sample_step > 0.0 && sample_step.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sample step must be positive, got {sample_step}"
        )));
    }
    if sample_step > total / 10.0 * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "sample step {sample_step} s exceeds a tenth of the {total} s window"
        )));
    }
    let (start, end) = scenario.observation_window();
    let steps = (total / sample_step - 1e-9).ceil() as usize;
    let step = total / steps as f64;
    let times: Vec<f64> = (0..=steps)
        .map(|i| {
            if i == steps {
                end
            } else {
                start + i as f64 * step
            }
        })
        .collect();
    let capacities = times
        .par_iter()
        .map(|&t| capacity_at(scenario, offsets, t))
        .collect();
    Ok(CapacityTrace {
        times,
        capacities,
        sample_step: step,
    })
}

/// Mobile service `∫ C(t) dt` over the observation window, in bits per Hz.
pub fn service_amount<O>(scenario: &Scenario, offsets: &O, rel_tol: f64) -> Result<f64>
where
    O: AsRef<[f64]> + ?Sized,
{
    if !(rel_tol > 0.0 && rel_tol <= MAX_REL_TOL) {
        return Err(Error::InvalidParameter(format!(
            "relative tolerance must lie in (0, {MAX_REL_TOL}], got {rel_tol}"
        )));
    }
    let (start, end) = scenario.observation_window();
    quadrature::simpson(|t| capacity_at(scenario, offsets, t), start, end, rel_tol)
}

pub fn default_scan_step(scenario: &Scenario) -> f64 {
    scenario.duration() / DEFAULT_SCAN_DIVISIONS
}

/// Sub-threshold intervals of `C(t)` and the fraction of the window they cover.
pub fn outage_report<O>(
    scenario: &Scenario,
    offsets: &O,
    threshold: f64,
    scan_step: f64,
    refine_tol: f64,
) -> Result<OutageReport>
where
    O: AsRef<[f64]> + ?Sized,
{
    let total = scenario.duration();
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "rate threshold must be non-negative, got {threshold}"
        )));
    }
    if !(scan_step > 0.0 && scan_step <= total / 100.0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "scan step must lie in (0, T/100 = {}], got {scan_step}",
            total / 100.0
        )));
    }
    if !(refine_tol > 0.0 && refine_tol <= scan_step / 100.0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "refine tolerance must lie in (0, scan_step/100 = {}], got {refine_tol}",
            scan_step / 100.0
        )));
    }
    let (start, end) = scenario.observation_window();
    let intervals = intervals::below_threshold(
        |t| capacity_at(scenario, offsets, t),
        start,
        end,
        threshold,
        scan_step,
        refine_tol,
    );
    let outage = intervals
        .iter()
        .map(Interval::length)
        .fold(0.0, |a, b| a + b);
    Ok(OutageReport {
        threshold,
        intervals,
        otr: (outage / total).clamp(0.0, 1.0),
    })
}

/// [`outage_report`] with the default scan step and refine tolerance.
pub fn outage_report_default<O>(
    scenario: &Scenario,
    offsets: &O,
    threshold: f64,
) -> Result<OutageReport>
where
    O: AsRef<[f64]> + ?Sized,
{
    outage_report(
        scenario,
        offsets,
        threshold,
        default_scan_step(scenario),
        DEFAULT_REFINE_TOL,
    )
}
