//! Accuracy summary recomputed from the emitted CSV files.

use std::collections::BTreeMap;
use std::path::Path;

use gfdm::linkquality::{max_snr_gap, BlerCurve};
use gfdm::syslevel::sup_distance;
use serde::{Deserialize, Serialize};

use crate::link::LinkRow;
use crate::output::{header_value, read_csv};
use crate::syslevel::ResultRow;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub metric: String,
    pub scope: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub method: String,
    pub case: String,
    pub ues: u64,
    pub snapshots: u64,
    pub seconds: f64,
}

fn row(metric: &str, scope: impl Into<String>, value: f64) -> ReportRow {
    ReportRow {
        metric: metric.into(),
        scope: scope.into(),
        value,
    }
}

/// Largest SNR gap (dB) between the methods in the 1-10 % BLER band for
/// every `(mcs, filter)` of a link table; NaN where a curve misses the band.
pub fn link_gaps(rows: &[LinkRow]) -> Vec<ReportRow> {
    let mut curves: BTreeMap<(String, String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for r in rows {
        curves
            .entry((r.mcs.clone(), r.filter.clone(), r.method.clone()))
            .or_default()
            .push((r.snr_db, r.bler));
    }
    let curve = |pts: &Vec<(f64, f64)>| {
        let mut pts = pts.clone();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        BlerCurve::new(pts.iter().map(|p| p.0).collect(), pts.iter().map(|p| p.1).collect())
    };
    let mut out = Vec::new();
    for ((mcs, filter, method), pts) in &curves {
        if method != "bitlevel" {
            continue;
        }
        let Some(other) = curves.get(&(mcs.clone(), filter.clone(), "abstraction".to_string())) else {
            continue;
        };
        let gap = match (curve(pts), curve(other)) {
            (Ok(a), Ok(b)) => max_snr_gap(&a, &b, 0.01, 0.1).unwrap_or(f64::NAN),
            _ => f64::NAN,
        };
        out.push(row("max_gap_db", format!("{mcs}/{filter}"), gap));
    }
    out
}

/// Sup-distances between the bit-level and matched abstraction CDFs.
pub fn cdf_distances(rows: &[ResultRow], case: &str, max_rate: f64) -> Result<Vec<ReportRow>, CliError> {
    let pick = |m: &str, f: fn(&ResultRow) -> f64| rows.iter().filter(|r| r.method == m).map(f).collect::<Vec<f64>>();
    let (bp, ap) = (pick("bitlevel", |r| r.per), pick("abstraction_xc", |r| r.per));
    if bp.is_empty() || ap.is_empty() {
        return Ok(Vec::new());
    }
    let (bt, at) = (pick("bitlevel", |r| r.throughput_mbps), pick("abstraction_xc", |r| r.throughput_mbps));
    Ok(vec![
        row("sup_distance_per", case, sup_distance(&bp, &ap, 1.0).map_err(CliError::runtime)?),
        row("sup_distance_throughput", case, sup_distance(&bt, &at, max_rate).map_err(CliError::runtime)?),
    ])
}

/// Builds the report from whatever result files `dir` holds.
pub fn build_report(dir: &Path) -> Result<Vec<ReportRow>, CliError> {
    let mut out = Vec::new();
    let link = dir.join("link.csv");
    if link.exists() {
        out.extend(link_gaps(&read_csv::<LinkRow>(&link)?));
    }
    for case in ["snr", "sinr"] {
        let p = dir.join(format!("results_{case}.csv"));
        if p.exists() {
            let max_rate: f64 = header_value(&p, "max_rate_mbps")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| CliError::Runtime(format!("{} lacks max_rate_mbps", p.display())))?;
            out.extend(cdf_distances(&read_csv(&p)?, case, max_rate)?);
        }
    }
    let timing = dir.join("timing.csv");
    if timing.exists() {
        let t: Vec<TimingRow> = read_csv(&timing)?;
        let total = |m: &str| t.iter().filter(|r| r.method == m).map(|r| r.seconds).sum::<f64>();
        for r in &t {
            out.push(row("wall_clock_s", format!("{}/{}", r.method, r.case), r.seconds));
        }
        // System runs time the matched subset; link runs have one abstraction row.
        let (scope, a) = match total("abstraction_xc") {
            a if a > 0.0 => ("cross-check", a),
            _ => ("link", total("abstraction")),
        };
        let b = total("bitlevel");
        if b > 0.0 && a > 0.0 {
            out.push(row("time_ratio_bitlevel_over_abstraction", scope, b / a));
        }
    }
    if out.is_empty() {
        return Err(CliError::Runtime(format!("no result files in {}", dir.display())));
    }
    Ok(out)
}
