//! Monte Carlo sweep over Haar-random interactions.

use super::records::{ensure_finite, SampleRecord};
use super::sample::{channel_sample, main_relation_rhs};
use super::{map_samples, map_samples_seq, ExperimentConfig, Mode};
use crate::{Error, Result};

/// Aggregates of one CUE sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CueSummary {
    pub samples: u64,
    pub max_main_relation_residual: f64,
    pub max_monogamy_residual: f64,
    /// Worst value of `F_AB - (1 + C_AB)/2`; stays at rounding level because
    /// mixed states sit on or below the pure-state line.
    pub max_envelope_excess: f64,
    /// Largest distance below the line, `(1 + C_AB)/2 - F_AB`; the scatter is
    /// genuinely two-dimensional when this is large.
    pub max_line_gap: f64,
    /// Empirical minimum of the singlet fraction (no lower bound is asserted).
    pub min_f_ab: f64,
    pub min_tau: f64,
    pub max_tau: f64,
    pub min_convexity_margin: f64,
    /// Least-squares fit of `F_AB` against the distributed-entanglement side
    /// of the main relation; `None` with fewer than two samples.
    pub regression: Option<Regression>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regression {
    pub slope: f64,
    pub intercept: f64,
}

pub(crate) fn summarize(records: &[SampleRecord]) -> CueSummary {
    let mut s = CueSummary {
        samples: records.len() as u64,
        max_main_relation_residual: 0.0,
        max_monogamy_residual: 0.0,
        max_envelope_excess: f64::NEG_INFINITY,
        max_line_gap: f64::NEG_INFINITY,
        min_f_ab: f64::INFINITY,
        min_tau: f64::INFINITY,
        max_tau: f64::NEG_INFINITY,
        min_convexity_margin: f64::INFINITY,
        regression: None,
    };
    for r in records {
        s.max_main_relation_residual = s.max_main_relation_residual.max(r.main_relation_residual);
        s.max_monogamy_residual = s.max_monogamy_residual.max(r.monogamy_residual);
        let line = (1.0 + r.c_ab) / 2.0;
        s.max_envelope_excess = s.max_envelope_excess.max(r.f_ab - line);
        s.max_line_gap = s.max_line_gap.max(line - r.f_ab);
        s.min_f_ab = s.min_f_ab.min(r.f_ab);
        s.min_tau = s.min_tau.min(r.tau_abe);
        s.max_tau = s.max_tau.max(r.tau_abe);
        s.min_convexity_margin = s.min_convexity_margin.min(r.convexity_margin);
    }
    s.regression = regression(records);
    s
}

fn regression(records: &[SampleRecord]) -> Option<Regression> {
    if records.len() < 2 {
        return None;
    }
    let n = records.len() as f64;
    let mut x_mean = 0.0;
    let mut y_mean = 0.0;
    for r in records {
        x_mean += main_relation_rhs(r.c_ab, r.c_eb);
        y_mean += r.f_ab;
    }
    x_mean /= n;
    y_mean /= n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for r in records {
        let dx = main_relation_rhs(r.c_ab, r.c_eb) - x_mean;
        let dy = r.f_ab - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(Regression {
        slope,
        intercept: y_mean - slope * x_mean,
    })
}

fn run_with<F>(config: &ExperimentConfig, mapper: F) -> Result<(Vec<SampleRecord>, CueSummary)>
where
    F: FnOnce(u64) -> Result<Vec<SampleRecord>>,
{
    if config.mode != Mode::Cue {
        return Err(Error::InvalidParameter("config mode is not `cue`".into()));
    }
    config.validate()?;
    let records = mapper(config.sample_count)?;
    ensure_finite(&records)?;
    let summary = summarize(&records);
    Ok((records, summary))
}

/// Runs the sweep, in parallel when the `parallel` feature is enabled.
/// Samples are merged in index order, so the output is identical to the
/// sequential run.
pub fn run_cue(config: &ExperimentConfig) -> Result<(Vec<SampleRecord>, CueSummary)> {
    let seed = config.master_seed;
    run_with(config, |n| {
        map_samples(n, |i| channel_sample(seed, i).map(|cs| cs.record(seed, i)))
    })
}

/// Always-sequential variant, kept public for benches and determinism checks.
pub fn run_cue_sequential(config: &ExperimentConfig) -> Result<(Vec<SampleRecord>, CueSummary)> {
    let seed = config.master_seed;
    run_with(config, |n| {
        map_samples_seq(n, |i| channel_sample(seed, i).map(|cs| cs.record(seed, i)))
    })
}
