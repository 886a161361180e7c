//! Deterministic scan of the two-rotation interaction family on the fixed
//! 11x11 grid `p, q in {0, 0.1, .., 1}`.

use super::records::{ensure_finite, PqRecord};
use super::sample::{default_channel_state, main_relation_rhs};
use super::{ExperimentConfig, Mode};
use crate::channel::{evolve, pq_closed_forms, pq_unitary, PQParams};
use crate::measures::EntanglementSummary;
use crate::{Error, Result};

pub const GRID_POINTS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqScanSummary {
    pub cells: usize,
    pub max_c_ab_residual: f64,
    pub max_f_ab_residual: f64,
    pub max_c_eb_residual: f64,
    /// Worst main-relation residual evaluated on the closed forms themselves.
    pub max_relation_residual: f64,
}

pub fn run_pq_scan(config: &ExperimentConfig) -> Result<(Vec<PqRecord>, PqScanSummary)> {
    if config.mode != Mode::PqScan {
        return Err(Error::InvalidParameter("config mode is not `pq-scan`".into()));
    }
    config.validate()?;
    let channel_state = default_channel_state();
    let mut records = Vec::with_capacity(GRID_POINTS * GRID_POINTS);
    let mut summary = PqScanSummary {
        cells: 0,
        max_c_ab_residual: 0.0,
        max_f_ab_residual: 0.0,
        max_c_eb_residual: 0.0,
        max_relation_residual: 0.0,
    };
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            let params = PQParams::new(i as f64 / 10.0, j as f64 / 10.0)?;
            let (c_ab_closed, f_ab_closed, c_eb_closed) = pq_closed_forms(&params);
            let unitary = pq_unitary(&params)?;
            let total = evolve(&unitary, &channel_state)?;
            let m = EntanglementSummary::from_state(&total)?;
            records.push(PqRecord {
                p: params.p(),
                q: params.q(),
                c_ab_sim: m.c_ab,
                c_ab_closed,
                f_ab_sim: m.f_ab,
                f_ab_closed,
                c_eb_sim: m.c_eb,
                c_eb_closed,
            });
            summary.cells += 1;
            summary.max_c_ab_residual = summary.max_c_ab_residual.max((m.c_ab - c_ab_closed).abs());
            summary.max_f_ab_residual = summary.max_f_ab_residual.max((m.f_ab - f_ab_closed).abs());
            summary.max_c_eb_residual = summary.max_c_eb_residual.max((m.c_eb - c_eb_closed).abs());
            summary.max_relation_residual = summary
                .max_relation_residual
                .max((f_ab_closed - main_relation_rhs(c_ab_closed, c_eb_closed)).abs());
        }
    }
    ensure_finite(&records)?;
    Ok((records, summary))
}
