//! Ready-made configurations for the standard figure set (fig3..fig9).

use std::fmt;
use std::str::FromStr;

use crate::deployment::{Deployment, FixedIntervalLayout};
use crate::error::{Error, Result};
use crate::scenario::Scenario;

use super::sweep::{Outputs, StrategyKind, SweepSpec, SweepVariable};

/// Rate threshold used by every preset, in bit/s/Hz.
pub const PRESET_THRESHOLD: f64 = 0.15;
/// Trace sampling step for the trace presets.
pub const TRACE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl FigureId {
    pub const ALL: [FigureId; 7] = [
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown figure id {s:?}; expected fig3..fig9")))
    }
}

/// One capacity-versus-time curve.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceCurve {
    pub label: String,
    pub strategy: StrategyKind,
    pub count: usize,
    pub delta: Option<f64>,
}

impl TraceCurve {
    pub fn deployment(&self, scenario: &Scenario) -> Result<Deployment> {
        match self.strategy {
            StrategyKind::Equidistant => Deployment::equidistant(scenario, self.count),
            StrategyKind::FixedInterval => Deployment::fixed_interval(
                scenario,
                self.count,
                self.delta.ok_or_else(|| {
                    Error::InvalidParameter("fixed-interval trace needs delta".into())
                })?,
                FixedIntervalLayout::Anchored,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PresetKind {
    Sweep(SweepSpec),
    Traces { curves: Vec<TraceCurve>, step: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: FigureId,
    pub scenario: Scenario,
    pub kind: PresetKind,
}

/// `count` evenly spaced values over `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| {
                if i == count - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

/// Even antenna counts from 2 to `max` (inclusive) in steps of `step`.
fn even_counts(max: usize, step: usize) -> Vec<f64> {
    (2..=max).step_by(step).map(|n| n as f64).collect()
}

fn traces(counts: &[usize], delta: f64) -> Vec<TraceCurve> {
    let mut curves = Vec::new();
    for &n in counts {
        for strategy in [StrategyKind::Equidistant, StrategyKind::FixedInterval] {
            curves.push(TraceCurve {
                label: format!("{}_n{n}", strategy.name()),
                strategy,
                count: n,
                delta: (strategy == StrategyKind::FixedInterval).then_some(delta),
            });
        }
    }
    curves
}

pub fn figure_preset(id: FigureId) -> FigurePreset {
    let scenario = Scenario::reference()
        .with_rate_threshold(PRESET_THRESHOLD)
        .expect("preset threshold is valid");
    let both = vec![StrategyKind::Equidistant, StrategyKind::FixedInterval];
    let kind = match id {
        FigureId::Fig3 => {
            let mut spec = SweepSpec::new(
                SweepVariable::AntennaSeparation,
                vec![
                    0.1, 1.0, 10.0, 25.0, 50.0, 75.0, 100.0, 125.0, 150.0, 175.0, 200.0,
                ],
                vec![StrategyKind::Equidistant],
            );
            spec.threshold = Some(PRESET_THRESHOLD);
            PresetKind::Sweep(spec)
        }
        FigureId::Fig4 => {
            let mut spec = SweepSpec::new(
                SweepVariable::TrainLength,
                linspace(10.0, 3.0 * scenario.coverage(), 50),
                vec![StrategyKind::Equidistant],
            );
            spec.antenna_count = Some(2);
            spec.outputs = Outputs {
                service: true,
                otr: false,
                trace: false,
            };
            PresetKind::Sweep(spec)
        }
        FigureId::Fig5 => PresetKind::Traces {
            curves: traces(&[10, 50, 100, 200], 1.0),
            step: TRACE_STEP,
        },
        FigureId::Fig6 => PresetKind::Traces {
            curves: traces(&[600], 0.15),
            step: TRACE_STEP,
        },
        FigureId::Fig7 => {
            // 2, 8, 14, ..., 2666: the largest even count that fits δ = 0.075 m.
            let mut spec = SweepSpec::new(SweepVariable::AntennaCount, even_counts(2666, 6), both);
            spec.delta = Some(0.075);
            spec.outputs = Outputs {
                service: true,
                otr: false,
                trace: false,
            };
            PresetKind::Sweep(spec)
        }
        FigureId::Fig8 => {
            let mut spec = SweepSpec::new(SweepVariable::AntennaCount, even_counts(200, 2), both);
            spec.delta = Some(1.0);
            spec.threshold = Some(PRESET_THRESHOLD);
            PresetKind::Sweep(spec)
        }
        FigureId::Fig9 => {
            let mut spec = SweepSpec::new(
                SweepVariable::Delta,
                linspace(0.1, 10.0, 100),
                vec![StrategyKind::FixedInterval],
            );
            spec.antenna_count = Some(20);
            spec.threshold = Some(PRESET_THRESHOLD);
            PresetKind::Sweep(spec)
        }
    };
    FigurePreset { id, scenario, kind }
}
