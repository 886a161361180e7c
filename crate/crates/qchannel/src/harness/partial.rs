//! Partially entangled initial states: the negative-result experiment.
//!
//! With the initial channel `cos(theta)|00> + sin(theta)|11>` for
//! `theta < pi/4`, the singlet fraction is no longer a function of the
//! distributed entanglement: samples with the same `C_AB` spread widely in
//! `F_AB`. The mode quantifies that spread by binning `C_AB` and reporting
//! the widest within-bin `F_AB` range.

use super::records::{ensure_finite, PartialRecord};
use super::{map_samples, ExperimentConfig, Mode};
use crate::channel::{evolve_partial, InteractionUnitary};
use crate::measures::{bipartition_concurrence, concurrence, singlet_fraction, three_tangle};
use crate::qmat::{C64, PureState};
use crate::sampling::{haar_unitary, SeedSpec};
use crate::{Error, Result};

/// Bin width on the `C_AB` axis. Narrow enough that within-bin variation of
/// `C_AB` cannot explain a spread of 0.01 in `F_AB`.
pub const BIN_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSummary {
    pub samples: u64,
    pub theta: f64,
    pub bin_width: f64,
    /// Widest `max - min` of `F_AB` within one `C_AB` bin.
    pub max_bin_spread: f64,
    /// Lower edge of the bin attaining the widest spread.
    pub spread_bin_lower_edge: f64,
    /// Bins holding at least two samples.
    pub populated_bins: usize,
    pub max_c_ab: f64,
}

fn partial_sample(master_seed: u64, index: u64, initial: &PureState) -> Result<PartialRecord> {
    let unitary = InteractionUnitary::new(haar_unitary(4, &SeedSpec::new(master_seed, index))?)?;
    let total = evolve_partial(&unitary, initial)?;
    let c_ab = concurrence(&total.reduced_density(&[0, 1])?)?;
    let c_eb = concurrence(&total.reduced_density(&[2, 1])?)?;
    let c_b_ae = bipartition_concurrence(&total, 1)?;
    let tau_abe = three_tangle(c_b_ae, c_ab, c_eb)?;
    let (f_ab, _) = singlet_fraction(&total.reduced_density(&[0, 1])?)?;
    Ok(PartialRecord {
        sample_index: index,
        seed: master_seed,
        c_ab,
        c_eb,
        c_b_ae,
        tau_abe,
        f_ab,
    })
}

pub fn run_partial(config: &ExperimentConfig) -> Result<(Vec<PartialRecord>, PartialSummary)> {
    if config.mode != Mode::Partial {
        return Err(Error::InvalidParameter("config mode is not `partial`".into()));
    }
    config.validate()?;
    let theta = config.initial_theta;
    if theta >= std::f64::consts::FRAC_PI_4 {
        return Err(Error::InvalidParameter(
            "theta = pi/4 is the maximally entangled case and belongs to cue mode".into(),
        ));
    }
    let initial = PureState::new(
        2,
        vec![
            C64::new(theta.cos(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(theta.sin(), 0.0),
        ],
    )?;
    let seed = config.master_seed;
    let records = map_samples(config.sample_count, |i| partial_sample(seed, i, &initial))?;
    ensure_finite(&records)?;

    // Spread statistic over C_AB bins.
    let bins = (1.0 / BIN_WIDTH) as usize + 2;
    let mut ranges: Vec<Option<(f64, f64, u32)>> = vec![None; bins];
    let mut max_c_ab = 0.0f64;
    for r in &records {
        max_c_ab = max_c_ab.max(r.c_ab);
        let idx = ((r.c_ab / BIN_WIDTH) as usize).min(bins - 1);
        let slot = &mut ranges[idx];
        *slot = Some(match *slot {
            None => (r.f_ab, r.f_ab, 1),
            Some((lo, hi, n)) => (lo.min(r.f_ab), hi.max(r.f_ab), n + 1),
        });
    }
    let mut max_bin_spread = 0.0f64;
    let mut spread_bin_lower_edge = 0.0f64;
    let mut populated_bins = 0usize;
    for (idx, range) in ranges.iter().enumerate() {
        if let Some((lo, hi, n)) = range {
            if *n >= 2 {
                populated_bins += 1;
                let spread = hi - lo;
                if spread > max_bin_spread {
                    max_bin_spread = spread;
                    spread_bin_lower_edge = idx as f64 * BIN_WIDTH;
                }
            }
        }
    }
    let summary = PartialSummary {
        samples: config.sample_count,
        theta,
        bin_width: BIN_WIDTH,
        max_bin_spread,
        spread_bin_lower_edge,
        populated_bins,
        max_c_ab,
    };
    Ok((records, summary))
}
