//! `slcheck` command-line front end.
//!
//! Exit codes: 0 when the property holds or no violation was found, 1 when
//! it is violated (or a reproduction expectation fails), 2 for usage, input
//! and I/O errors.

mod distfile;
mod report;

pub use distfile::DistributionFile;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checkers::{check_log_concavity, check_nlc, check_slc, SampleConfig, VerdictKind};
use crate::error::{Error, Result};
use crate::family::{emit_region_tables, sweep, SweepConfig};
use crate::repro::reproduce_counterexample;
use crate::scalar::{parse_exact, ExactScalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "slcheck", version, about = "Check log-submodularity and strong log-concavity of subset distributions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// Negative lattice condition (log-submodularity), exact.
    Nlc,
    /// Log-concavity of the polynomial itself on the positive orthant.
    Lc,
    /// Log-concavity of every derivative.
    Slc,
}

#[derive(Debug, Clone, clap::Args)]
struct SamplingArgs {
    /// Random points per polynomial, on top of the fixed grid.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance on the largest log-Hessian eigenvalue.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, default_value_t = 0.01)]
    box_lo: f64,
    #[arg(long, default_value_t = 100.0)]
    box_hi: f64,
}

impl SamplingArgs {
    fn config(&self) -> SampleConfig {
        SampleConfig {
            points: self.samples,
            lo: self.box_lo,
            hi: self.box_hi,
            seed: self.seed,
            tolerance: self.tolerance,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one property of a distribution file.
    Check {
        file: PathBuf,
        #[arg(short, long, value_enum)]
        property: Property,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Divide weights by their sum after loading.
        #[arg(long)]
        normalize: bool,
        /// Also write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Replay the three-variable counterexample and its certificates.
    ReproCounterexample {
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Sweep the (b, c) family and write region tables.
    Sweep {
        #[arg(long, default_value = "4", value_parser = exact_arg)]
        b_max: ExactScalar,
        #[arg(long, default_value = "4", value_parser = exact_arg)]
        c_max: ExactScalar,
        #[arg(long, default_value = "0.05", value_parser = exact_arg)]
        step: ExactScalar,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn exact_arg(s: &str) -> std::result::Result<ExactScalar, String> {
    parse_exact(s).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn write_lines(out: &mut dyn Write, lines: &[String]) -> Result<()> {
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

fn write_json(path: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn exit_for(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Violated => EXIT_VIOLATED,
        _ => EXIT_OK,
    }
}

fn sampling_line(cfg: &SampleConfig) -> String {
    format!(
        "sampling: {} random points per polynomial plus fixed grid, box [{}, {}], relative tolerance {:e}, seed {}",
        cfg.points, cfg.lo, cfg.hi, cfg.tolerance, cfg.seed
    )
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check {
            file,
            property,
            sampling,
            normalize,
            report,
        } => {
            let p = DistributionFile::read(&file)?.to_poly(normalize)?;
            let cfg = sampling.config();
            let mut lines = vec![report::input_line(&p)];
            let (kind, body) = match property {
                Property::Nlc => {
                    let v = check_nlc(&p)?;
                    lines.push("property: nlc".into());
                    lines.push(format!("verdict: {}", v.kind()));
                    lines.extend(report::verdict_lines(&v));
                    (v.kind(), report::verdict_json(&v))
                }
                Property::Lc => {
                    let v = check_log_concavity(&p, &cfg)?;
                    lines.push("property: lc".into());
                    lines.push(sampling_line(&cfg));
                    lines.push(format!("verdict: {}", v.kind()));
                    lines.extend(report::verdict_lines(&v));
                    (v.kind(), report::verdict_json(&v))
                }
                Property::Slc => {
                    let r = check_slc(&p, &cfg)?;
                    lines.push("property: slc".into());
                    lines.push(sampling_line(&cfg));
                    lines.push(format!("verdict: {}", r.aggregate()));
                    lines.extend(report::slc_lines(&r));
                    (r.aggregate(), report::slc_json(&r))
                }
            };
            write_lines(out, &lines)?;
            write_json(
                &report,
                &json!({
                    "property": format!("{property:?}").to_lowercase(),
                    "n": p.n(),
                    "sampling": cfg,
                    "result": body,
                }),
            )?;
            Ok(exit_for(kind))
        }
        Command::ReproCounterexample { sampling, report } => {
            let cfg = sampling.config();
            let r = reproduce_counterexample(&cfg);
            let mut lines = vec![
                "counterexample: g = (4 + 3(x+y+z) + 3(xy+xz+yz)) / 22".to_string(),
                sampling_line(&cfg),
            ];
            for c in &r.checks {
                lines.push(format!("[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name));
                lines.push(format!("    {}", c.detail));
            }
            if let Some(k) = &r.m_over_r {
                lines.push(format!("M/R scalar: {k}"));
            }
            lines.push(format!(
                "result: {}",
                if r.passed() {
                    "strongly log-concave but not log-submodular"
                } else {
                    "reproduction FAILED"
                }
            ));
            write_lines(out, &lines)?;
            write_json(&report, &serde_json::to_value(&r).map_err(|e| Error::Io(e.to_string()))?)?;
            Ok(if r.passed() { EXIT_OK } else { EXIT_VIOLATED })
        }
        Command::Sweep {
            b_max,
            c_max,
            step,
            sampling,
            out: dir,
        } => {
            let cfg = SweepConfig {
                b_max,
                c_max,
                step,
                samples: sampling.samples,
                seed: sampling.seed,
                lo: sampling.box_lo,
                hi: sampling.box_hi,
                tolerance: sampling.tolerance,
            };
            let result = sweep(&cfg)?;
            let files = emit_region_tables(&result, &dir)?;
            let s = result.summary();
            let mut lines = vec![
                format!("cells: {}", s.cells),
                format!("nlc cells: {}", s.nlc_cells),
                format!("slc no-violation cells: {}", s.slc_cells),
                format!("slc but not nlc cells: {}", s.slc_not_nlc_cells),
                format!(
                    "containment (nlc ⊆ slc): {}",
                    if s.containment { "holds" } else { "FAILS" }
                ),
            ];
            let three = crate::scalar::int(3);
            if let Some(cell) = result.cell_at(&three, &three) {
                lines.push(format!(
                    "cell (3, 3): nlc = {}, slc_no_violation = {}",
                    cell.nlc, cell.slc_no_violation
                ));
            }
            for f in [&files.nlc_boundary, &files.slc_boundary, &files.full_csv] {
                lines.push(format!("wrote {}", f.display()));
            }
            write_lines(out, &lines)?;
            Ok(EXIT_OK)
        }
    }
}
