//! Emission formats for experiment records.
//!
//! CSV rows carry floats at 17 significant digits (`{:.16e}`), enough to
//! round-trip any f64, with a mandatory header line and a single `\n`
//! terminator per line. The JSON-lines alternative serializes one record per
//! line with shortest-round-trip floats.

use std::io::{self, Write};

use serde::Serialize;

use crate::{Error, Result};

/// 17 significant digits, full f64 round-trip.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A record type that knows its CSV layout.
pub trait CsvRecord {
    /// Comma-separated column names, matching the field order.
    const HEADER: &'static str;
    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()>;
    /// True when every numeric field is finite.
    fn is_finite(&self) -> bool;
}

/// One Monte Carlo sample of the channel pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleRecord {
    pub sample_index: u64,
    /// Master seed of the run; `(seed, sample_index)` reproduces the row.
    pub seed: u64,
    pub c_ab: f64,
    pub c_eb: f64,
    pub c_ae: f64,
    pub f_ab: f64,
    pub tau_abe: f64,
    /// Simulated six-direction average fidelity with optimal corrections.
    pub f_optimal: f64,
    /// `|F_AB - (1 + C_AB)(1 + sqrt(1 - C_EB^2))/4|`
    pub main_relation_residual: f64,
    /// `|C_AB^2 + C_EB^2 + tau - 1|`
    pub monogamy_residual: f64,
    /// Worst `sum_a P_a C_EB^a - C_EB` over the six input axes.
    pub convexity_margin: f64,
}

impl CsvRecord for SampleRecord {
    const HEADER: &'static str = "sample_index,seed,c_ab,c_eb,c_ae,f_ab,tau_abe,f_optimal,main_relation_residual,monogamy_residual,convexity_margin";

    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.sample_index,
            self.seed,
            fmt_f64(self.c_ab),
            fmt_f64(self.c_eb),
            fmt_f64(self.c_ae),
            fmt_f64(self.f_ab),
            fmt_f64(self.tau_abe),
            fmt_f64(self.f_optimal),
            fmt_f64(self.main_relation_residual),
            fmt_f64(self.monogamy_residual),
            fmt_f64(self.convexity_margin),
        )
    }

    fn is_finite(&self) -> bool {
        [
            self.c_ab,
            self.c_eb,
            self.c_ae,
            self.f_ab,
            self.tau_abe,
            self.f_optimal,
            self.main_relation_residual,
            self.monogamy_residual,
            self.convexity_margin,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// One cell of the `(p, q)` grid scan: simulated measures next to the
/// closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PqRecord {
    pub p: f64,
    pub q: f64,
    pub c_ab_sim: f64,
    pub c_ab_closed: f64,
    pub f_ab_sim: f64,
    pub f_ab_closed: f64,
    pub c_eb_sim: f64,
    pub c_eb_closed: f64,
}

impl CsvRecord for PqRecord {
    const HEADER: &'static str =
        "p,q,c_ab_sim,c_ab_closed,f_ab_sim,f_ab_closed,c_eb_sim,c_eb_closed";

    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(self.p),
            fmt_f64(self.q),
            fmt_f64(self.c_ab_sim),
            fmt_f64(self.c_ab_closed),
            fmt_f64(self.f_ab_sim),
            fmt_f64(self.f_ab_closed),
            fmt_f64(self.c_eb_sim),
            fmt_f64(self.c_eb_closed),
        )
    }

    fn is_finite(&self) -> bool {
        [
            self.p,
            self.q,
            self.c_ab_sim,
            self.c_ab_closed,
            self.f_ab_sim,
            self.f_ab_closed,
            self.c_eb_sim,
            self.c_eb_closed,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// One sample of the teleportation experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeleportRecord {
    pub sample_index: u64,
    pub seed: u64,
    pub c_ab: f64,
    pub c_eb: f64,
    pub f_ab: f64,
    pub f_simulated: f64,
    pub f_formula: f64,
    pub f_cc_max: f64,
    pub f_qc_max: f64,
    /// `|f_simulated - (2 F_AB + 1)/3|`
    pub optimality_residual: f64,
    /// `|f_simulated - (f_cc_max + f_qc_max C_AB / 3)|`
    pub decomposition_residual: f64,
    pub convexity_margin: f64,
}

impl CsvRecord for TeleportRecord {
    const HEADER: &'static str = "sample_index,seed,c_ab,c_eb,f_ab,f_simulated,f_formula,f_cc_max,f_qc_max,optimality_residual,decomposition_residual,convexity_margin";

    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.sample_index,
            self.seed,
            fmt_f64(self.c_ab),
            fmt_f64(self.c_eb),
            fmt_f64(self.f_ab),
            fmt_f64(self.f_simulated),
            fmt_f64(self.f_formula),
            fmt_f64(self.f_cc_max),
            fmt_f64(self.f_qc_max),
            fmt_f64(self.optimality_residual),
            fmt_f64(self.decomposition_residual),
            fmt_f64(self.convexity_margin),
        )
    }

    fn is_finite(&self) -> bool {
        [
            self.c_ab,
            self.c_eb,
            self.f_ab,
            self.f_simulated,
            self.f_formula,
            self.f_cc_max,
            self.f_qc_max,
            self.optimality_residual,
            self.decomposition_residual,
            self.convexity_margin,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// One sample of the partial-entanglement experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialRecord {
    pub sample_index: u64,
    pub seed: u64,
    pub c_ab: f64,
    pub c_eb: f64,
    /// Concurrence across the `B | AE` bipartition; below 1 here because the
    /// initial state is only partially entangled.
    pub c_b_ae: f64,
    pub tau_abe: f64,
    pub f_ab: f64,
}

impl CsvRecord for PartialRecord {
    const HEADER: &'static str = "sample_index,seed,c_ab,c_eb,c_b_ae,tau_abe,f_ab";

    fn write_csv_row<W: Write + ?Sized>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            self.sample_index,
            self.seed,
            fmt_f64(self.c_ab),
            fmt_f64(self.c_eb),
            fmt_f64(self.c_b_ae),
            fmt_f64(self.tau_abe),
            fmt_f64(self.f_ab),
        )
    }

    fn is_finite(&self) -> bool {
        [self.c_ab, self.c_eb, self.c_b_ae, self.tau_abe, self.f_ab]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// Writes header plus one row per record, `\n`-terminated.
pub fn write_csv<R: CsvRecord, W: Write + ?Sized>(w: &mut W, records: &[R]) -> io::Result<()> {
    writeln!(w, "{}", R::HEADER)?;
    for r in records {
        r.write_csv_row(w)?;
    }
    Ok(())
}

/// One JSON object per line.
pub fn write_jsonl<R: Serialize, W: Write + ?Sized>(w: &mut W, records: &[R]) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Record-completeness gate: refuses to emit records with non-finite fields.
pub(crate) fn ensure_finite<R: CsvRecord>(records: &[R]) -> Result<()> {
    for (i, r) in records.iter().enumerate() {
        if !r.is_finite() {
            return Err(Error::Numeric(format!("record {i} contains a non-finite field")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_significant_digits() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(0.7285533905932737), "7.2855339059327373e-1");
        // Round-trips exactly.
        let x = std::f64::consts::LN_2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_layout_is_header_plus_rows_with_single_newlines() {
        let rec = PqRecord {
            p: 0.1,
            q: 0.2,
            c_ab_sim: 0.3,
            c_ab_closed: 0.3,
            f_ab_sim: 0.4,
            f_ab_closed: 0.4,
            c_eb_sim: 0.5,
            c_eb_closed: 0.5,
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec, rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines.len(), 4); // header + 2 rows + trailing empty
        assert_eq!(lines[0], PqRecord::HEADER);
        assert!(lines[3].is_empty());
        assert!(!text.contains('\r'));
        assert_eq!(lines[1].split(',').count(), 8);
    }

    #[test]
    fn jsonl_rows_parse_back() {
        let rec = PartialRecord {
            sample_index: 3,
            seed: 42,
            c_ab: 0.25,
            c_eb: 0.5,
            c_b_ae: 0.7,
            tau_abe: 0.1,
            f_ab: 0.6,
        };
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &[rec]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(buf.trim_ascii_end()).unwrap();
        assert_eq!(v["sample_index"], 3);
        assert_eq!(v["c_eb"], 0.5);
    }

    #[test]
    fn nan_records_are_refused() {
        let mut rec = PartialRecord {
            sample_index: 0,
            seed: 0,
            c_ab: 0.0,
            c_eb: 0.0,
            c_b_ae: 0.0,
            tau_abe: 0.0,
            f_ab: 0.0,
        };
        assert!(ensure_finite(&[rec]).is_ok());
        rec.f_ab = f64::NAN;
        assert!(ensure_finite(&[rec]).is_err());
    }
}
