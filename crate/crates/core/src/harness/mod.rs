//! Experiment plumbing: input files, parameter sweeps, figure presets and
//! CSV output.

pub mod config;
pub mod csv;
pub mod presets;
pub mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::metrics::{self, CapacityTrace};

pub use presets::{figure_preset, FigureId, FigurePreset, PresetKind};
pub use sweep::{run_sweep, StrategyKind, SweepResult, SweepSpec, SweepVariable};

/// Number of interior local maxima of a sampled trace. Runs of equal samples
/// count as one candidate; the first and last samples never count.
pub fn count_rate_peaks(trace: &CapacityTrace) -> Result<usize> {
    count_peaks(&trace.capacities)
}

pub fn count_peaks(values: &[f64]) -> Result<usize> {
    if values.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "peak counting needs at least 3 samples, got {}",
            values.len()
        )));
    }
    let mut merged: Vec<f64> = Vec::with_capacity(values.len());
    for &v in values {
        if merged.last() != Some(&v) {
            merged.push(v);
        }
    }
    Ok(merged
        .windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2])
        .count())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Runs a figure preset and writes one CSV per curve into `dir`.
/// Returns the files written, in order.
pub fn write_figure(id: FigureId, dir: &Path, reproducible: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let preset = figure_preset(id);
    let mut written = Vec::new();
    match &preset.kind {
        PresetKind::Sweep(spec) => {
            let result = run_sweep(&preset.scenario, spec)?;
            for &strategy in &spec.strategies {
                if !result.rows.iter().any(|r| r.strategy == strategy) {
                    continue;
                }
                let path = dir.join(format!("{id}_{}.csv", strategy.name()));
                let mut out = create(&path)?;
                csv::write_sweep_rows(&mut out, &result, |r| r.strategy == strategy, reproducible)?;
                out.flush()?;
                written.push(path);
            }
        }
        PresetKind::Traces { curves, step } => {
            for curve in curves {
                let dep = curve.deployment(&preset.scenario)?;
                let trace = metrics::sample_trace(&preset.scenario, &dep, *step)?;
                let path = dir.join(format!("{id}_{}.csv", curve.label));
                let mut out = create(&path)?;
                csv::write_trace(&mut out, &trace, None, reproducible)?;
                out.flush()?;
                written.push(path);
            }
        }
    }
    Ok(written)
}
