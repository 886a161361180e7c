//! Per-sample teleportation experiment: simulated fidelity against every
//! closed-form value it must reproduce.

use super::records::{ensure_finite, TeleportRecord};
use super::sample::channel_sample;
use super::{map_samples, ExperimentConfig, Mode};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportSummary {
    pub samples: u64,
    pub max_optimality_residual: f64,
    pub max_formula_residual: f64,
    pub max_decomposition_residual: f64,
    pub min_convexity_margin: f64,
}

pub fn run_teleport(config: &ExperimentConfig) -> Result<(Vec<TeleportRecord>, TeleportSummary)> {
    if config.mode != Mode::Teleport {
        return Err(Error::InvalidParameter("config mode is not `teleport`".into()));
    }
    config.validate()?;
    let seed = config.master_seed;
    let records = map_samples(config.sample_count, |i| {
        let cs = channel_sample(seed, i)?;
        let s = &cs.summary;
        let r = &cs.report;
        Ok(TeleportRecord {
            sample_index: i,
            seed,
            c_ab: s.c_ab,
            c_eb: s.c_eb,
            f_ab: s.f_ab,
            f_simulated: r.f_simulated,
            f_formula: r.f_formula,
            f_cc_max: r.f_cc_max,
            f_qc_max: r.f_qc_max,
            optimality_residual: (r.f_simulated - (2.0 * s.f_ab + 1.0) / 3.0).abs(),
            decomposition_residual: (r.f_simulated - r.f_decomposition).abs(),
            convexity_margin: r.convexity_margin,
        })
    })?;
    ensure_finite(&records)?;
    let mut summary = TeleportSummary {
        samples: config.sample_count,
        max_optimality_residual: 0.0,
        max_formula_residual: 0.0,
        max_decomposition_residual: 0.0,
        min_convexity_margin: f64::INFINITY,
    };
    for r in &records {
        summary.max_optimality_residual = summary.max_optimality_residual.max(r.optimality_residual);
        summary.max_formula_residual = summary
            .max_formula_residual
            .max((r.f_simulated - r.f_formula).abs());
        summary.max_decomposition_residual = summary
            .max_decomposition_residual
            .max(r.decomposition_residual);
        summary.min_convexity_margin = summary.min_convexity_margin.min(r.convexity_margin);
    }
    Ok((records, summary))
}
