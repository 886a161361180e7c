//! Experiment orchestration: configuration, the five run modes, record
//! emission and summaries.
//!
//! Samples are independent and evaluated through counter-based random
//! streams (sample `i` uses stream index `i`), so results are a pure
//! function of `(mode, master_seed, parameters)` and identical whether the
//! sweep runs on one thread or many. Results are always merged in sample
//! order and written by a single writer.

mod config_file;
mod cue;
mod partial;
mod pqscan;
mod records;
mod sample;
mod teleport_mode;
mod verify;

use std::io::Write;
use std::path::PathBuf;

pub use config_file::{parse_config_file, parse_config_str, FileConfig};
pub use cue::{run_cue, run_cue_sequential, CueSummary, Regression};
pub use partial::{run_partial, PartialSummary, BIN_WIDTH};
pub use pqscan::{run_pq_scan, PqScanSummary, GRID_POINTS};
pub use records::{
    write_csv, write_jsonl, CsvRecord, PartialRecord, PqRecord, SampleRecord, TeleportRecord,
};
pub use sample::{channel_sample, default_channel_state, main_relation_rhs, ChannelSample};
pub use teleport_mode::{run_teleport, TeleportSummary};
pub use verify::{run_verify, CheckKind, CheckResult, VerifyReport};

use crate::{Error, Result};

/// Experiment mode, mirroring the CLI subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Cue,
    PqScan,
    Teleport,
    Partial,
    Verify,
}

impl Mode {
    /// Default sample count per mode; the grid scan is fixed-size.
    pub fn default_samples(self) -> u64 {
        match self {
            Mode::Cue => 10_000,
            Mode::PqScan => (GRID_POINTS * GRID_POINTS) as u64,
            Mode::Teleport => 200,
            Mode::Partial => 5_000,
            Mode::Verify => 1_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn parse(value: &str) -> Result<Self> {
        match value {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::JsonLines),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected csv or jsonl)"
            ))),
        }
    }
}

/// Full description of one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub sample_count: u64,
    pub master_seed: u64,
    /// Initial-state angle for partial mode: `cos(theta)|00> + sin(theta)|11>`.
    pub initial_theta: f64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            sample_count: mode.default_samples(),
            master_seed: 42,
            initial_theta: std::f64::consts::FRAC_PI_8,
            output_path: None,
            output_format: OutputFormat::Csv,
        }
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.sample_count = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.initial_theta = theta;
        self
    }

    pub fn with_format(mut self, format: OutputFormat) -> Self {
        self.output_format = format;
        self
    }

    pub fn with_output_path(mut self, path: Option<PathBuf>) -> Self {
        self.output_path = path;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count < 1 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        if !(self.initial_theta > 0.0 && self.initial_theta <= std::f64::consts::FRAC_PI_4) {
            return Err(Error::InvalidParameter(format!(
                "theta = {} outside (0, pi/4]",
                self.initial_theta
            )));
        }
        Ok(())
    }
}

/// Evaluates `f` for indices `0..count`, in parallel when the `parallel`
/// feature is on. Results come back in index order either way.
#[cfg(feature = "parallel")]
pub(crate) fn map_samples<T, F>(count: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_samples<T, F>(count: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    map_samples_seq(count, f)
}

pub(crate) fn map_samples_seq<T, F>(count: u64, f: F) -> Result<Vec<T>>
where
    F: Fn(u64) -> Result<T>,
{
    (0..count).map(f).collect()
}

/// Outcome of one run, ready for emission.
#[derive(Debug, Clone)]
pub enum RunOutput {
    Cue {
        records: Vec<SampleRecord>,
        summary: CueSummary,
    },
    PqScan {
        records: Vec<PqRecord>,
        summary: PqScanSummary,
    },
    Teleport {
        records: Vec<TeleportRecord>,
        summary: TeleportSummary,
    },
    Partial {
        records: Vec<PartialRecord>,
        summary: PartialSummary,
    },
    Verify {
        report: VerifyReport,
    },
}

/// Dispatches on the configured mode.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput> {
    match config.mode {
        Mode::Cue => {
            let (records, summary) = run_cue(config)?;
            Ok(RunOutput::Cue { records, summary })
        }
        Mode::PqScan => {
            let (records, summary) = run_pq_scan(config)?;
            Ok(RunOutput::PqScan { records, summary })
        }
        Mode::Teleport => {
            let (records, summary) = run_teleport(config)?;
            Ok(RunOutput::Teleport { records, summary })
        }
        Mode::Partial => {
            let (records, summary) = run_partial(config)?;
            Ok(RunOutput::Partial { records, summary })
        }
        Mode::Verify => {
            let report = run_verify(config)?;
            Ok(RunOutput::Verify { report })
        }
    }
}

impl RunOutput {
    /// False only when a verification check failed.
    pub fn all_checks_passed(&self) -> bool {
        match self {
            RunOutput::Verify { report } => report.all_passed(),
            _ => true,
        }
    }

    /// Writes the records (or the verify report) in the requested format.
    pub fn write_data<W: Write + ?Sized>(&self, format: OutputFormat, w: &mut W) -> Result<()> {
        match (self, format) {
            (RunOutput::Cue { records, .. }, OutputFormat::Csv) => write_csv(w, records)?,
            (RunOutput::Cue { records, .. }, OutputFormat::JsonLines) => write_jsonl(w, records)?,
            (RunOutput::PqScan { records, .. }, OutputFormat::Csv) => write_csv(w, records)?,
            (RunOutput::PqScan { records, .. }, OutputFormat::JsonLines) => {
                write_jsonl(w, records)?
            }
            (RunOutput::Teleport { records, .. }, OutputFormat::Csv) => write_csv(w, records)?,
            (RunOutput::Teleport { records, .. }, OutputFormat::JsonLines) => {
                write_jsonl(w, records)?
            }
            (RunOutput::Partial { records, .. }, OutputFormat::Csv) => write_csv(w, records)?,
            (RunOutput::Partial { records, .. }, OutputFormat::JsonLines) => {
                write_jsonl(w, records)?
            }
            (RunOutput::Verify { report }, OutputFormat::Csv) => write_csv(w, &report.checks)?,
            (RunOutput::Verify { report }, OutputFormat::JsonLines) => {
                write_jsonl(w, &report.checks)?
            }
        }
        Ok(())
    }

    /// Human-readable closing lines for stderr.
    pub fn summary_lines(&self) -> Vec<String> {
        match self {
            RunOutput::Cue { summary, .. } => {
                let mut lines = vec![
                    format!("samples: {}", summary.samples),
                    format!(
                        "max main-relation residual: {:.3e}",
                        summary.max_main_relation_residual
                    ),
                    format!("max monogamy residual: {:.3e}", summary.max_monogamy_residual),
                    format!("max envelope excess: {:.3e}", summary.max_envelope_excess),
                    format!("max distance below line: {:.6}", summary.max_line_gap),
                    format!("min F_AB: {:.6}", summary.min_f_ab),
                    format!(
                        "tau range: [{:.3e}, {:.6}]",
                        summary.min_tau, summary.max_tau
                    ),
                    format!("min convexity margin: {:.3e}", summary.min_convexity_margin),
                ];
                match summary.regression {
                    Some(reg) => lines.push(format!(
                        "inset regression: slope {:.12}, intercept {:.3e}",
                        reg.slope, reg.intercept
                    )),
                    None => lines.push("inset regression: n/a (needs >= 2 samples)".into()),
                }
                lines
            }
            RunOutput::PqScan { summary, .. } => vec![
                format!("grid cells: {}", summary.cells),
                format!(
                    "max residuals: C_AB {:.3e}, F_AB {:.3e}, C_EB {:.3e}",
                    summary.max_c_ab_residual, summary.max_f_ab_residual, summary.max_c_eb_residual
                ),
                format!(
                    "max main-relation residual (closed forms): {:.3e}",
                    summary.max_relation_residual
                ),
            ],
            RunOutput::Teleport { summary, .. } => vec![
                format!("samples: {}", summary.samples),
                format!(
                    "max |f_sim - (2F+1)/3|: {:.3e}",
                    summary.max_optimality_residual
                ),
                format!("max |f_sim - formula|: {:.3e}", summary.max_formula_residual),
                format!(
                    "max decomposition residual: {:.3e}",
                    summary.max_decomposition_residual
                ),
                format!("min convexity margin: {:.3e}", summary.min_convexity_margin),
            ],
            RunOutput::Partial { summary, .. } => vec![
                format!(
                    "samples: {} at theta = {:.6}",
                    summary.samples, summary.theta
                ),
                format!(
                    "max F_AB spread within a C_AB bin of width {}: {:.6} (bin at {:.3})",
                    summary.bin_width, summary.max_bin_spread, summary.spread_bin_lower_edge
                ),
                format!("bins with >= 2 samples: {}", summary.populated_bins),
                format!("max C_AB: {:.6}", summary.max_c_ab),
            ],
            RunOutput::Verify { report } => {
                let mut lines: Vec<String> = report
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{}: {} ({} {:.3e}, threshold {:.3e})",
                            c.check,
                            if c.passed { "PASS" } else { "FAIL" },
                            match c.kind {
                                CheckKind::MaxBelow => "max",
                                CheckKind::MinAbove => "min",
                            },
                            c.statistic,
                            c.threshold
                        )
                    })
                    .collect();
                lines.push(format!(
                    "verify: {} checks, {}",
                    report.checks.len(),
                    if report.all_passed() {
                        "all passed".to_string()
                    } else {
                        format!("FAILED: {:?}", report.failed_names())
                    }
                ));
                lines
            }
        }
    }
}
