use std::collections::BTreeMap;
use std::io::Write;

use super::{Algorithm, RunRecord};
use crate::error::Result;

/// Per-(n, algorithm) statistics. Standard deviations are population ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub count: usize,
    pub abs_min: i64,
    pub abs_max: i64,
    pub abs_mean: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub r_mean: f64,
    pub r_sd: f64,
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(usize, Algorithm), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.n, r.algorithm)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((n, algorithm), rs)| {
            let abs: Vec<i64> = rs.iter().map(|r| r.abs_error).collect();
            let ratios: Vec<f64> = rs.iter().map(|r| r.ratio).collect();
            let abs_f: Vec<f64> = abs.iter().map(|&a| a as f64).collect();
            let (abs_mean, _) = mean_sd(&abs_f);
            let (r_mean, r_sd) = mean_sd(&ratios);
            SummaryRow {
                n,
                algorithm,
                count: rs.len(),
                abs_min: *abs.iter().min().expect("groups are non-empty"),
                abs_max: *abs.iter().max().expect("groups are non-empty"),
                abs_mean,
                r_min: ratios.iter().copied().fold(f64::INFINITY, f64::min),
                r_max: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                r_mean,
                r_sd,
            }
        })
        .collect()
}

pub const RECORD_HEADER: [&str; 11] = [
    "label",
    "n",
    "family",
    "algorithm",
    "length",
    "reference",
    "ref_kind",
    "R",
    "abs_error",
    "elapsed_ms",
    "rounds",
];

pub fn write_records_csv(records: &[RunRecord], timing: bool, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        let elapsed = if timing { r.elapsed_ms } else { 0.0 };
        w.write_record([
            r.label.clone(),
            r.n.to_string(),
            r.family.to_string(),
            r.algorithm.to_string(),
            r.length.to_string(),
            r.reference.to_string(),
            r.ref_kind.to_string(),
            format!("{:.6}", r.ratio),
            r.abs_error.to_string(),
            format!("{elapsed:.3}"),
            r.rounds.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_csv(rows: &[SummaryRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n",
        "algorithm",
        "count",
        "abs_min",
        "abs_max",
        "abs_mean",
        "R_min",
        "R_max",
        "R_mean",
        "R_sd",
    ])?;
    for s in rows {
        w.write_record([
            s.n.to_string(),
            s.algorithm.to_string(),
            s.count.to_string(),
            s.abs_min.to_string(),
            s.abs_max.to_string(),
            format!("{:.4}", s.abs_mean),
            format!("{:.6}", s.r_min),
            format!("{:.6}", s.r_max),
            format!("{:.6}", s.r_mean),
            format!("{:.6}", s.r_sd),
        ])?;
    }
    w.flush()?;
    Ok(())
}
