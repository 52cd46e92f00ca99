//! CSV emitters. Numbers are written with 17 significant digits so that every
//! value round-trips exactly.

use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::channel::link_state_at;
use crate::metrics::{CapacityTrace, OutageReport};
use crate::scenario::Scenario;

use super::sweep::SweepResult;

/// Formats `x` with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Trailing `# generated_unix_s=...` line, omitted in reproducible mode.
pub fn write_timestamp<W: Write>(out: &mut W, reproducible: bool) -> io::Result<()> {
    if reproducible {
        return Ok(());
    }
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    writeln!(out, "# generated_unix_s={secs}")
}

/// `t_s,capacity_bps_hz[,snr_1..snr_N]`.
pub fn write_trace<W: Write>(
    out: &mut W,
    trace: &CapacityTrace,
    snrs: Option<(&Scenario, &[f64])>,
    reproducible: bool,
) -> io::Result<()> {
    write!(out, "t_s,capacity_bps_hz")?;
    if let Some((_, offsets)) = snrs {
        for n in 1..=offsets.len() {
            write!(out, ",snr_{n}")?;
        }
    }
    writeln!(out)?;
    for (&t, &c) in trace.times.iter().zip(&trace.capacities) {
        write!(out, "{},{}", num(t), num(c))?;
        if let Some((scenario, offsets)) = snrs {
            for s in link_state_at(scenario, offsets, t).snrs {
                write!(out, ",{}", num(s))?;
            }
        }
        writeln!(out)?;
    }
    write_timestamp(out, reproducible)
}

/// `t_minus_s,t_plus_s` rows followed by `# otr=<value>`.
pub fn write_outage<W: Write>(
    out: &mut W,
    report: &OutageReport,
    reproducible: bool,
) -> io::Result<()> {
    writeln!(out, "t_minus_s,t_plus_s")?;
    for iv in &report.intervals {
        writeln!(out, "{},{}", num(iv.t_minus), num(iv.t_plus))?;
    }
    writeln!(out, "# otr={}", num(report.otr))?;
    write_timestamp(out, reproducible)
}

/// `x,strategy,service_bits_per_hz_s,otr`; outputs that were not requested
/// are left empty. Provenance follows the rows as comment lines.
pub fn write_sweep<W: Write>(
    out: &mut W,
    result: &SweepResult,
    reproducible: bool,
) -> io::Result<()> {
    write_sweep_rows(out, result, |_| true, reproducible)
}

pub fn write_sweep_rows<W, P>(
    out: &mut W,
    result: &SweepResult,
    mut keep: P,
    reproducible: bool,
) -> io::Result<()>
where
    W: Write,
    P: FnMut(&super::sweep::SweepRow) -> bool,
{
    writeln!(out, "x,strategy,service_bits_per_hz_s,otr")?;
    for row in result.rows.iter().filter(|r| keep(r)) {
        writeln!(
            out,
            "{},{},{},{}",
            num(row.x),
            row.strategy.name(),
            opt(row.service),
            opt(row.otr)
        )?;
    }
    let p = &result.provenance;
    writeln!(out, "# scenario_sha256={}", p.scenario_sha256)?;
    writeln!(out, "# tool_version={}", p.tool_version)?;
    writeln!(out, "# c_th_bits={}", num(p.threshold))?;
    writeln!(out, "# rel_tol={}", num(p.rel_tol))?;
    writeln!(out, "# scan_step_s={}", num(p.scan_step))?;
    writeln!(out, "# refine_tol_s={}", num(p.refine_tol))?;
    for s in &result.skipped {
        writeln!(
            out,
            "# skipped x={} strategy={}: {}",
            num(s.x),
            s.strategy.name(),
            s.reason
        )?;
    }
    write_timestamp(out, reproducible)
}
