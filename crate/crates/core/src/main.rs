use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hst_antenna_lab::analytic;
use hst_antenna_lab::harness::{self, config, csv};
use hst_antenna_lab::metrics;
use hst_antenna_lab::{Result, Strategy};

#[derive(Parser)]
#[command(
    name = "hst-antenna-lab",
    version,
    about = "Multi-antenna deployment analysis for high-speed train links"
)]
struct Cli {
    /// Omit the timestamp comment from CSV output.
    #[arg(long, global = true)]
    reproducible: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the instantaneous capacity over the observation window.
    Trace {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Sampling step in seconds.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Append one per-antenna SNR column per antenna.
        #[arg(long)]
        with_snr: bool,
    },
    /// Print the mobile service (bits/Hz) of the scenario's deployment.
    Service {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = metrics::DEFAULT_REL_TOL)]
        rel_tol: f64,
    },
    /// Print the outage time ratio; optionally write the outage intervals.
    Otr {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        cth: f64,
        /// Scan step in seconds (default T/12000).
        #[arg(long)]
        scan_step: Option<f64>,
        #[arg(long, default_value_t = metrics::DEFAULT_REFINE_TOL)]
        refine_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep described by a JSON spec.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce one figure's curves as CSV files.
    Figure {
        #[arg(long)]
        id: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the two-antenna closed forms against numerics; prints JSON.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        separation: f64,
        #[arg(long)]
        cth: f64,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn trace_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".into())
}

fn run(cli: Cli) -> Result<()> {
    let reproducible = cli.reproducible;
    match cli.command {
        Command::Trace {
            scenario,
            out,
            step,
            with_snr,
        } => {
            let file = config::ScenarioFile::load(&scenario)?;
            let sc = file.scenario()?;
            let dep = file.deployment(&sc)?;
            let trace = metrics::sample_trace(&sc, &dep, step)?;
            let mut w = create(&out)?;
            let snrs = with_snr.then_some((&sc, dep.offsets()));
            csv::write_trace(&mut w, &trace, snrs, reproducible)?;
            w.flush()?;
        }
        Command::Service { scenario, rel_tol } => {
            let file = config::ScenarioFile::load(&scenario)?;
            let sc = file.scenario()?;
            let dep = file.deployment(&sc)?;
            let s = metrics::service_amount(&sc, &dep, rel_tol)?;
            println!("{}", csv::num(s));
        }
        Command::Otr {
            scenario,
            cth,
            scan_step,
            refine_tol,
            out,
        } => {
            let file = config::ScenarioFile::load(&scenario)?;
            let sc = file.scenario()?;
            let dep = file.deployment(&sc)?;
            let step = scan_step.unwrap_or_else(|| metrics::default_scan_step(&sc));
            let report = metrics::outage_report(&sc, &dep, cth, step, refine_tol)?;
            if let Some(path) = out {
                let mut w = create(&path)?;
                csv::write_outage(&mut w, &report, reproducible)?;
                w.flush()?;
            }
            println!("{}", csv::num(report.otr));
        }
        Command::Sweep {
            scenario,
            spec,
            out,
        } => {
            let sc = config::ScenarioFile::load(&scenario)?.scenario()?;
            let spec = config::SweepFile::load(&spec)?.into_spec()?;
            let result = harness::run_sweep(&sc, &spec)?;
            for s in &result.skipped {
                eprintln!("skipped x={} {}: {}", s.x, s.strategy.name(), s.reason);
            }
            let mut w = create(&out)?;
            csv::write_sweep(&mut w, &result, reproducible)?;
            w.flush()?;
            if !result.traces.is_empty() {
                let dir = out.parent().unwrap_or(Path::new("."));
                let stem = trace_stem(&out);
                for (x, strategy, trace) in &result.traces {
                    let path = dir.join(format!("{stem}_{}_{x}.csv", strategy.name()));
                    let mut w = create(&path)?;
                    csv::write_trace(&mut w, trace, None, reproducible)?;
                    w.flush()?;
                }
            }
        }
        Command::Figure { id, out } => {
            let id: harness::FigureId = id.parse()?;
            for path in harness::write_figure(id, &out, reproducible)? {
                println!("{}", path.display());
            }
        }
        Command::Validate {
            scenario,
            separation,
            cth,
        } => {
            let file = config::ScenarioFile::load(&scenario)?;
            let sc = file.scenario()?;
            let lemma3 = match file
                .deployment
                .as_ref()
                .map(|d| d.resolve(&sc))
                .transpose()?
            {
                Some(dep) => match dep.strategy() {
                    Strategy::FixedInterval { delta, .. } => Some((dep.count(), *delta)),
                    _ => None,
                },
                None => None,
            };
            let lengths = analytic::default_lemma1_lengths(&sc);
            let report = analytic::analytic_report_n2(&sc, separation, cth, &lengths, lemma3)?;
            let stdout = io::stdout();
            let mut w = stdout.lock();
            serde_json::to_writer_pretty(&mut w, &report)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
