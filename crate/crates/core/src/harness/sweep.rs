use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deployment::{Deployment, FixedIntervalLayout};
use crate::error::{Error, Result};
use crate::metrics::{self, CapacityTrace};
use crate::scenario::Scenario;

use super::config::scenario_hash;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Two antennas at offsets `{0, x}`.
    AntennaSeparation,
    TrainLength,
    AntennaCount,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Equidistant,
    FixedInterval,
}

impl StrategyKind {
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Equidistant => "equidistant",
            StrategyKind::FixedInterval => "fixed_interval",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Outputs {
    pub service: bool,
    pub otr: bool,
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel_tol: f64,
    /// `None` selects `T / 12000` for the scenario in use.
    pub scan_step: Option<f64>,
    pub refine_tol: f64,
    pub trace_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rel_tol: metrics::DEFAULT_REL_TOL,
            scan_step: None,
            refine_tol: metrics::DEFAULT_REFINE_TOL,
            trace_step: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub strategies: Vec<StrategyKind>,
    pub outputs: Outputs,
    /// Antenna count when it is not the swept variable (defaults to 2).
    pub antenna_count: Option<usize>,
    /// Fixed-interval spacing when it is not the swept variable.
    pub delta: Option<f64>,
    pub layout: FixedIntervalLayout,
    /// Overrides the scenario's rate threshold.
    pub threshold: Option<f64>,
    pub tolerances: Tolerances,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, values: Vec<f64>, strategies: Vec<StrategyKind>) -> Self {
        Self {
            variable,
            values,
            strategies,
            outputs: Outputs {
                service: true,
                otr: true,
                trace: false,
            },
            antenna_count: None,
            delta: None,
            layout: FixedIntervalLayout::default(),
            threshold: None,
            tolerances: Tolerances::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidParameter("sweep has no values".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "sweep values must be finite".into(),
            ));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "sweep values must be strictly increasing".into(),
            ));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidParameter("sweep has no strategies".into()));
        }
        let o = self.outputs;
        if !(o.service || o.otr || o.trace) {
            return Err(Error::InvalidParameter("sweep requests no outputs".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub strategy: StrategyKind,
    pub service: Option<f64>,
    pub otr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedCombination {
    pub x: f64,
    pub strategy: StrategyKind,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub scenario_sha256: String,
    pub tool_version: String,
    pub rel_tol: f64,
    pub scan_step: f64,
    pub refine_tol: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedCombination>,
    pub traces: Vec<(f64, StrategyKind, CapacityTrace)>,
    pub provenance: Provenance,
}

/// The scenario and deployment one sweep combination evaluates.
pub fn resolve_combination(
    scenario: &Scenario,
    spec: &SweepSpec,
    x: f64,
    strategy: StrategyKind,
) -> Result<(Scenario, Deployment)> {
    let count = || spec.antenna_count.unwrap_or(2);
    let delta = || {
        spec.delta
            .ok_or_else(|| Error::InvalidParameter("fixed-interval sweeps need delta_m".into()))
    };
    let build = |sc: &Scenario, n: usize| match strategy {
        StrategyKind::Equidistant => Deployment::equidistant(sc, n),
        StrategyKind::FixedInterval => Deployment::fixed_interval(sc, n, delta()?, spec.layout),
    };
    match spec.variable {
        SweepVariable::AntennaSeparation => match strategy {
            StrategyKind::Equidistant => Ok((
                scenario.clone(),
                Deployment::explicit(scenario, vec![0.0, x])?,
            )),
            StrategyKind::FixedInterval => Err(Error::InvalidParameter(
                "antenna separation does not parameterize the fixed-interval strategy".into(),
            )),
        },
        SweepVariable::TrainLength => {
            let sc = scenario.with_train_length(x)?;
            let dep = build(&sc, count())?;
            Ok((sc, dep))
        }
        SweepVariable::AntennaCount => {
            if x < 1.0 || x.fract() != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "antenna count must be a positive integer, got {x}"
                )));
            }
            Ok((scenario.clone(), build(scenario, x as usize)?))
        }
        SweepVariable::Delta => match strategy {
            StrategyKind::FixedInterval => Ok((
                scenario.clone(),
                Deployment::fixed_interval(scenario, count(), x, spec.layout)?,
            )),
            StrategyKind::Equidistant => Err(Error::InvalidParameter(
                "delta does not parameterize the equidistant strategy".into(),
            )),
        },
    }
}

enum Outcome {
    Row(SweepRow, Option<CapacityTrace>),
    Skipped(SkippedCombination),
}

/// Evaluates every `(value, strategy)` pair. Combinations run in parallel;
/// rows come back in input order (values outer, strategies inner).
pub fn run_sweep(scenario: &Scenario, spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let scenario = match spec.threshold {
        Some(t) => scenario.with_rate_threshold(t)?,
        None => scenario.clone(),
    };
    let tol = spec.tolerances;
    let scan_step = tol
        .scan_step
        .unwrap_or_else(|| metrics::default_scan_step(&scenario));

    let combos: Vec<(f64, StrategyKind)> = spec
        .values
        .iter()
        .flat_map(|&x| spec.strategies.iter().map(move |&s| (x, s)))
        .collect();

    let outcomes = combos
        .par_iter()
        .map(|&(x, strategy)| -> Result<Outcome> {
            let (sc, dep) = match resolve_combination(&scenario, spec, x, strategy) {
                Ok(v) => v,
                Err(e) => {
                    return Ok(Outcome::Skipped(SkippedCombination {
                        x,
                        strategy,
                        reason: e.to_string(),
                    }))
                }
            };
            let service = spec
                .outputs
                .service
                .then(|| metrics::service_amount(&sc, &dep, tol.rel_tol))
                .transpose()?;
            let otr = spec
                .outputs
                .otr
                .then(|| {
                    metrics::outage_report(
                        &sc,
                        &dep,
                        sc.rate_threshold(),
                        scan_step,
                        tol.refine_tol,
                    )
                    .map(|r| r.otr)
                })
                .transpose()?;
            let trace = spec
                .outputs
                .trace
                .then(|| metrics::sample_trace(&sc, &dep, tol.trace_step))
                .transpose()?;
            Ok(Outcome::Row(
                SweepRow {
                    x,
                    strategy,
                    service,
                    otr,
                },
                trace,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut traces = Vec::new();
    for outcome in outcomes {
        match outcome {
            Outcome::Row(row, trace) => {
                if let Some(tr) = trace {
                    traces.push((row.x, row.strategy, tr));
                }
                rows.push(row);
            }
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptySweep);
    }
    Ok(SweepResult {
        rows,
        skipped,
        traces,
        provenance: Provenance {
            scenario_sha256: scenario_hash(&scenario),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            rel_tol: tol.rel_tol,
            scan_step,
            refine_tol: tol.refine_tol,
            threshold: scenario.rate_threshold(),
        },
    })
}
