//! Antenna placement along the train.
//!
//! An offset is the along-track distance of an antenna behind the head of the
//! train, so antenna `n` sits at track coordinate `v·t − offset[n]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Relative slack for floating-point comparisons against spacing limits.
const SPACING_SLACK: f64 = 1e-9;

/// How the two fixed-interval groups are indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedIntervalLayout {
    /// Group `m` (1-based) places its pair at `(m−1)·δ` and `L − (m−1)·δ`:
    /// the head group starts at the front of the train and the tail group at
    /// the rear. With `N = 2` this is `{0, L}`.
    #[default]
    Anchored,
    /// Antenna `n` (1-based, global index) sits at `n·δ` for `n ≤ N/2` and at
    /// `L − n·δ` for `n > N/2`. The tail group is displaced `N/2·δ` away from
    /// the rear of the train.
    GlobalIndex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum Strategy {
    Equidistant,
    FixedInterval {
        delta: f64,
        layout: FixedIntervalLayout,
    },
    Explicit,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Equidistant => "equidistant",
            Strategy::FixedInterval { .. } => "fixed_interval",
            Strategy::Explicit => "explicit",
        }
    }
}

/// A validated antenna placement.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    strategy: Strategy,
    offsets: Vec<f64>,
}

impl AsRef<[f64]> for Deployment {
    fn as_ref(&self) -> &[f64] {
        &self.offsets
    }
}

impl Deployment {
    pub fn equidistant(scenario: &Scenario, count: usize) -> Result<Self> {
        let offsets = equidistant_offsets(count, scenario.train_length(), scenario.min_spacing())?;
        Self::checked(scenario, Strategy::Equidistant, offsets)
    }

    pub fn fixed_interval(
        scenario: &Scenario,
        count: usize,
        delta: f64,
        layout: FixedIntervalLayout,
    ) -> Result<Self> {
        let offsets = fixed_interval_offsets(
            count,
            delta,
            scenario.train_length(),
            scenario.min_spacing(),
            layout,
        )?;
        Self::checked(scenario, Strategy::FixedInterval { delta, layout }, offsets)
    }

    /// User-supplied offsets; only the `[0, L]` range and half-wavelength
    /// spacing are enforced.
    pub fn explicit(scenario: &Scenario, offsets: Vec<f64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::InvalidCount {
                count: 0,
                reason: "at least one antenna is required".into(),
            });
        }
        Self::checked(scenario, Strategy::Explicit, offsets)
    }

    fn checked(scenario: &Scenario, strategy: Strategy, offsets: Vec<f64>) -> Result<Self> {
        let length = scenario.train_length();
        let slack = SPACING_SLACK * length;
        for &o in &offsets {
            if !o.is_finite() {
                return Err(Error::InvalidParameter(format!("offset {o} is not finite")));
            }
            if o < -slack || o > length + slack {
                return Err(Error::SpacingViolation(format!(
                    "offset {o} m lies outside the train [0, {length}] m"
                )));
            }
        }
        check_min_separation(&offsets, scenario.min_spacing())?;
        Ok(Self { strategy, offsets })
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn count(&self) -> usize {
        self.offsets.len()
    }
}

fn check_min_separation(offsets: &[f64], min_spacing: f64) -> Result<()> {
    let mut sorted = offsets.to_vec();
    sorted.sort_by(f64::total_cmp);
    for pair in sorted.windows(2) {
        let gap = pair[1] - pair[0];
        if gap < min_spacing * (1.0 - SPACING_SLACK) {
            return Err(Error::SpacingViolation(format!(
                "antennas at {} m and {} m are {gap} m apart, below the {min_spacing} m minimum",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// `N` antennas spread evenly from the head (offset 0) to the tail (offset `L`).
pub fn equidistant_offsets(count: usize, length: f64, min_spacing: f64) -> Result<Vec<f64>> {
    if count < 2 {
        return Err(Error::InvalidCount {
            count,
            reason: "equidistant placement needs at least two antennas".into(),
        });
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "train length must be positive, got {length}"
        )));
    }
    let gaps = (count - 1) as f64;
    let spacing = length / gaps;
    if spacing < min_spacing * (1.0 - SPACING_SLACK) {
        return Err(Error::SpacingViolation(format!(
            "equidistant spacing {spacing} m is below the {min_spacing} m minimum"
        )));
    }
    Ok((0..count).map(|i| i as f64 * length / gaps).collect())
}

/// Two groups of `N/2` antennas spaced `delta` apart, one growing back from
/// the head and one growing forward from the tail.
pub fn fixed_interval_offsets(
    count: usize,
    delta: f64,
    length: f64,
    min_spacing: f64,
    layout: FixedIntervalLayout,
) -> Result<Vec<f64>> {
    if count < 2 || !count.is_multiple_of(2) {
        return Err(Error::InvalidCount {
            count,
            reason: "fixed-interval placement needs an even number of antennas".into(),
        });
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "interval must be positive, got {delta}"
        )));
    }
    if delta < min_spacing * (1.0 - SPACING_SLACK) {
        return Err(Error::SpacingViolation(format!(
            "interval {delta} m is below the {min_spacing} m minimum"
        )));
    }
    let widest = length / (count - 1) as f64;
    if delta > widest * (1.0 + SPACING_SLACK) {
        return Err(Error::ConstraintViolation(format!(
            "interval {delta} m exceeds L/(N-1) = {widest} m"
        )));
    }
    let half = count / 2;
    let offsets: Vec<f64> = match layout {
        FixedIntervalLayout::Anchored => {
            let head = (0..half).map(|k| k as f64 * delta);
            let tail = (0..half).map(|k| length - k as f64 * delta);
            head.chain(tail).collect()
        }
        FixedIntervalLayout::GlobalIndex => (1..=count)
            .map(|n| {
                let step = n as f64 * delta;
                if n <= half {
                    step
                } else {
                    length - step
                }
            })
            .collect(),
    };
    let slack = SPACING_SLACK * length;
    if let Some(&bad) = offsets.iter().find(|&&o| o < -slack || o > length + slack) {
        return Err(Error::SpacingViolation(format!(
            "fixed-interval offset {bad} m falls outside the train"
        )));
    }
    check_min_separation(&offsets, min_spacing)?;
    Ok(offsets)
}

/// Largest antenna count allowed by interval `delta`: `floor(L/δ) + 1`.
pub fn n_max(length: f64, delta: f64) -> Result<usize> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "interval must be positive, got {delta}"
        )));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "train length must be positive, got {length}"
        )));
    }
    Ok((length / delta).floor() as usize + 1)
}
