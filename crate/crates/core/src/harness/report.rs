//! Run reports and their CSV / JSON forms.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::order::OrderParams;

/// One experiment cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: String,
    pub ell: usize,
    /// Matching edges as 1-based `(pX,cY)` labels.
    pub matching: Vec<String>,
    pub weight: f64,
    pub query_count: usize,
    pub m: usize,
    pub n: usize,
    pub exact_weight: Option<f64>,
    pub ratio: Option<f64>,
    pub params: Option<OrderParams>,
    pub bound: Option<f64>,
    pub bound_satisfied: Option<bool>,
    pub wall_time_ms: f64,
    pub error: Option<String>,
}

impl RunReport {
    pub fn failed(instance: &str, algorithm: &str, ell: usize, error: String) -> Self {
        RunReport {
            instance: instance.into(),
            algorithm: algorithm.into(),
            ell,
            matching: Vec::new(),
            weight: 0.0,
            query_count: 0,
            m: 0,
            n: 0,
            exact_weight: None,
            ratio: None,
            params: None,
            bound: None,
            bound_satisfied: None,
            wall_time_ms: 0.0,
            error: Some(error),
        }
    }
}

/// Column order of the CSV report.
pub const CSV_COLUMNS: [&str; 19] = [
    "instance",
    "algorithm",
    "ell",
    "weight",
    "query_count",
    "m",
    "n",
    "exact_weight",
    "ratio",
    "bound",
    "bound_satisfied",
    "beta",
    "gamma",
    "beta_l",
    "gamma_l",
    "zeta_l",
    "matching",
    "wall_time_ms",
    "error",
];

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn fmt_profile(p: &[f64]) -> String {
    p.iter().map(f64::to_string).collect::<Vec<_>>().join(";")
}

fn csv_row(r: &RunReport) -> Vec<String> {
    let p = r.params.as_ref();
    vec![
        r.instance.clone(),
        r.algorithm.clone(),
        r.ell.to_string(),
        r.weight.to_string(),
        r.query_count.to_string(),
        r.m.to_string(),
        r.n.to_string(),
        fmt_opt(r.exact_weight),
        fmt_opt(r.ratio),
        fmt_opt(r.bound),
        r.bound_satisfied.map(|b| b.to_string()).unwrap_or_default(),
        fmt_opt(p.map(|p| p.beta)),
        fmt_opt(p.map(|p| p.gamma)),
        p.map(|p| fmt_profile(&p.beta_l)).unwrap_or_default(),
        p.map(|p| fmt_profile(&p.gamma_l)).unwrap_or_default(),
        p.and_then(|p| p.zeta_l.as_deref().map(fmt_profile)).unwrap_or_default(),
        r.matching.join(" "),
        r.wall_time_ms.to_string(),
        r.error.clone().unwrap_or_default(),
    ]
}

/// Header plus one row per report. Profiles are `;`-separated values for
/// ℓ = 0, 1, ...; `zeta_l` is empty without an edge order.
pub fn write_csv<W: Write>(reports: &[RunReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in reports {
        w.write_record(csv_row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(reports: &[RunReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(reports, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn to_json_string(reports: &[RunReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}
