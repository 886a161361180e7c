//! The bundled verification suite: every cross-module identity, inequality
//! and symmetry checked over one seeded CUE sweep plus the deterministic
//! grid scans, reported as named pass/fail rows.

use std::io::{self, Write};

use serde::Serialize;

use super::cue::summarize;
use super::pqscan::run_pq_scan;
use super::records::{fmt_f64, CsvRecord, SampleRecord};
use super::sample::{channel_sample, default_channel_state, main_relation_rhs};
use super::{map_samples, ExperimentConfig, Mode};
use crate::channel::{apply_kraus, evolve_env_on_bob, kraus_from_unitary, MapKind};
use crate::measures::{symmetric_singlet_fraction, EntanglementSummary};
use crate::teleport::{config_b_fidelity, fidelity_formula};
use crate::{tol, Error, Result};

/// Direction of a check's comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `statistic <= threshold` (worst residual).
    MaxBelow,
    /// `statistic >= threshold` (worst margin).
    MinAbove,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub kind: CheckKind,
}

impl CheckResult {
    fn max_below(check: &'static str, statistic: f64, threshold: f64) -> Self {
        Self {
            check,
            passed: statistic <= threshold,
            statistic,
            threshold,
            kind: CheckKind::MaxBelow,
        }
    }

    fn min_above(check: &'static str, statistic: f64, threshold: f64) -> Self {
        Self {
            check,
            passed: statistic >= threshold,
            statistic,
            threshold,
            kind: CheckKind::MinAbove,
        }
    }
}

impl CsvRecord for CheckResult {
    const HEADER: &'static str = "check,passed,statistic,threshold,kind";

    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{}",
            self.check,
            self.passed,
            fmt_f64(self.statistic),
            fmt_f64(self.threshold),
            match self.kind {
                CheckKind::MaxBelow => "max_below",
                CheckKind::MinAbove => "min_above",
            }
        )
    }

    fn is_finite(&self) -> bool {
        self.statistic.is_finite() && self.threshold.is_finite()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub master_seed: u64,
    pub sample_count: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check)
            .collect()
    }
}

/// Per-sample data beyond the plain record: the mirrored configuration, the
/// Kraus consistency residuals and the formula identities.
struct VerifySample {
    record: SampleRecord,
    /// max |[N_k]_ij - [M_i]_kj| (exact index identity, zero up to rounding).
    index_swap_residual: f64,
    kraus_lambda_residual: f64,
    kraus_gamma_residual: f64,
    /// |symmetric form - F_AB|
    symmetric_form_residual: f64,
    /// |f_simulated - (2 F_AB + 1)/3|
    optimality_residual: f64,
    /// |f_simulated - (f_cc_max + f_qc_max C_AB / 3)|
    decomposition_residual: f64,
    /// max(|F(b) - F(a)|, |C_AB(b) - C_AB(a)|) for the env-on-Bob mirror.
    config_symmetry_residual: f64,
    /// Mirror label swap: max(|C_AE(b) - C_EB(a)|, |C_EB(b) - C_AE(a)|).
    mirror_consistency_residual: f64,
    /// C_AE(b) - C_EB(b), the entanglement ordering in the configuration
    /// where the environment couples to Bob's qubit.
    ordering_margin: f64,
    /// Eq-style bound: fidelity expression at C_EB(b) minus at C_AE(b).
    config_b_bound_margin: f64,
    /// |config-b fidelity formula - (2 F(b) + 1)/3|
    config_b_formula_residual: f64,
}

fn verify_sample(master_seed: u64, index: u64) -> Result<VerifySample> {
    let cs = channel_sample(master_seed, index)?;
    let record = cs.record(master_seed, index);
    let s = &cs.summary;

    // Kraus representations against the traced evolution.
    let lambda = kraus_from_unitary(&cs.unitary, MapKind::Lambda)?;
    let gamma = kraus_from_unitary(&cs.unitary, MapKind::Gamma)?;
    let mut index_swap_residual = 0.0f64;
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let diff = (gamma.operators()[k].at(i, j) - lambda.operators()[i].at(k, j)).norm();
                index_swap_residual = index_swap_residual.max(diff);
            }
        }
    }
    let p_plus = default_channel_state().density()?;
    let rho_ab = cs.total.reduced_density(&[0, 1])?;
    let rho_eb = cs.total.reduced_density(&[2, 1])?;
    let kraus_lambda_residual = apply_kraus(&lambda, &p_plus)?
        .matrix()
        .max_abs_diff(rho_ab.matrix());
    let kraus_gamma_residual = apply_kraus(&gamma, &p_plus)?
        .matrix()
        .max_abs_diff(rho_eb.matrix());

    let symmetric_form_residual =
        (symmetric_singlet_fraction(s.c_ab, s.tau_abe)? - s.f_ab).abs();
    let optimality_residual = (cs.report.f_simulated - (2.0 * s.f_ab + 1.0) / 3.0).abs();
    let decomposition_residual = (cs.report.f_simulated - cs.report.f_decomposition).abs();

    // Mirrored configuration: environment coupled to Bob's qubit.
    let total_b = evolve_env_on_bob(&cs.unitary, &default_channel_state())?;
    let sb = EntanglementSummary::from_state(&total_b)?;
    let config_symmetry_residual = (sb.f_ab - s.f_ab).abs().max((sb.c_ab - s.c_ab).abs());
    let mirror_consistency_residual = (sb.c_ae - s.c_eb).abs().max((sb.c_eb - s.c_ae).abs());
    let ordering_margin = sb.c_ae - sb.c_eb;
    let config_b_bound_margin =
        config_b_fidelity(sb.c_ab, sb.c_eb) - config_b_fidelity(sb.c_ab, sb.c_ae);
    let config_b_formula_residual =
        (config_b_fidelity(sb.c_ab, sb.c_ae) - (2.0 * sb.f_ab + 1.0) / 3.0).abs();

    Ok(VerifySample {
        record,
        index_swap_residual,
        kraus_lambda_residual,
        kraus_gamma_residual,
        symmetric_form_residual,
        optimality_residual,
        decomposition_residual,
        config_symmetry_residual,
        mirror_consistency_residual,
        ordering_margin,
        config_b_bound_margin,
        config_b_formula_residual,
    })
}

pub fn run_verify(config: &ExperimentConfig) -> Result<VerifyReport> {
    if config.mode != Mode::Verify {
        return Err(Error::InvalidParameter("config mode is not `verify`".into()));
    }
    config.validate()?;
    let seed = config.master_seed;
    let samples = map_samples(config.sample_count, |i| verify_sample(seed, i))?;
    let records: Vec<SampleRecord> = samples.iter().map(|v| v.record).collect();
    let cue = summarize(&records);

    let fold_max = |f: fn(&VerifySample) -> f64| samples.iter().map(f).fold(0.0f64, f64::max);
    let fold_min = |f: fn(&VerifySample) -> f64| {
        samples.iter().map(f).fold(f64::INFINITY, f64::min)
    };

    let mut checks = vec![
        CheckResult::max_below("main_relation", cue.max_main_relation_residual, tol::DERIVED),
        CheckResult::max_below("envelope", cue.max_envelope_excess, 1e-12),
        CheckResult::min_above("mixed_scatter", cue.max_line_gap, 0.05),
        CheckResult::max_below("monogamy", cue.max_monogamy_residual, tol::DERIVED),
        CheckResult::max_below(
            "tangle_range",
            (-cue.min_tau).max(cue.max_tau - 1.0),
            tol::DERIVED,
        ),
        CheckResult::min_above("convexity", cue.min_convexity_margin, -tol::DERIVED),
        CheckResult::max_below(
            "sts_optimality",
            fold_max(|v| v.optimality_residual),
            tol::DERIVED,
        ),
        CheckResult::max_below(
            "fidelity_decomposition",
            fold_max(|v| v.decomposition_residual),
            tol::DERIVED,
        ),
        CheckResult::max_below(
            "symmetric_fidelity_form",
            fold_max(|v| v.symmetric_form_residual),
            tol::DERIVED,
        ),
        CheckResult::max_below("index_swap", fold_max(|v| v.index_swap_residual), 1e-14),
        CheckResult::max_below(
            "kraus_lambda",
            fold_max(|v| v.kraus_lambda_residual),
            tol::UNITARITY,
        ),
        CheckResult::max_below(
            "kraus_gamma",
            fold_max(|v| v.kraus_gamma_residual),
            tol::UNITARITY,
        ),
        CheckResult::max_below(
            "config_symmetry",
            fold_max(|v| v.config_symmetry_residual),
            tol::DERIVED,
        ),
        CheckResult::max_below(
            "mirror_consistency",
            fold_max(|v| v.mirror_consistency_residual),
            tol::DERIVED,
        ),
        CheckResult::min_above(
            "entanglement_ordering",
            fold_min(|v| v.ordering_margin),
            -tol::DERIVED,
        ),
        CheckResult::min_above(
            "config_b_fidelity_bound",
            fold_min(|v| v.config_b_bound_margin),
            -tol::DERIVED,
        ),
        CheckResult::max_below(
            "config_b_formula",
            fold_max(|v| v.config_b_formula_residual),
            tol::DERIVED,
        ),
    ];

    // Regression of F_AB on the distributed-entanglement expression.
    match cue.regression {
        Some(reg) => {
            checks.push(CheckResult::max_below(
                "inset_slope",
                (reg.slope - 1.0).abs(),
                tol::DERIVED,
            ));
            checks.push(CheckResult::max_below(
                "inset_intercept",
                reg.intercept.abs(),
                tol::DERIVED,
            ));
        }
        None => {
            checks.push(CheckResult::max_below("inset_slope", f64::MAX, tol::DERIVED));
            checks.push(CheckResult::max_below(
                "inset_intercept",
                f64::MAX,
                tol::DERIVED,
            ));
        }
    }

    // Closed forms on the deterministic grid.
    let pq_config = ExperimentConfig::new(Mode::PqScan)
        .with_seed(config.master_seed)
        .with_format(config.output_format);
    let (_, pq) = run_pq_scan(&pq_config)?;
    checks.push(CheckResult::max_below(
        "pq_closed_forms",
        pq.max_c_ab_residual
            .max(pq.max_f_ab_residual)
            .max(pq.max_c_eb_residual),
        1e-10,
    ));
    checks.push(CheckResult::max_below(
        "pq_main_relation",
        pq.max_relation_residual,
        1e-10,
    ));

    // The fidelity formula collapses to the pure-channel line at C_EB = 0.
    let mut classical_limit = 0.0f64;
    for i in 0..=100 {
        let c_ab = i as f64 / 100.0;
        classical_limit = classical_limit
            .max((fidelity_formula(c_ab, 0.0) - (2.0 + c_ab) / 3.0).abs());
    }
    checks.push(CheckResult::max_below(
        "classical_limit",
        classical_limit,
        tol::DERIVED,
    ));

    // Eq-15 / symmetric-form agreement is implied by the two residual checks,
    // but the direct comparison is cheap and catches sign slips.
    let mut relation_forms = 0.0f64;
    for r in &records {
        relation_forms = relation_forms
            .max((main_relation_rhs(r.c_ab, r.c_eb) - symmetric_singlet_fraction(r.c_ab, r.tau_abe)?).abs());
    }
    checks.push(CheckResult::max_below(
        "relation_form_agreement",
        relation_forms,
        tol::DERIVED,
    ));

    let failed = checks.iter().filter(|c| !c.passed).count();
    checks.push(CheckResult::max_below("overall", failed as f64, 0.0));

    Ok(VerifyReport {
        master_seed: config.master_seed,
        sample_count: config.sample_count,
        checks,
    })
}
