//! Serializable output records. JSON lines for reports, CSV for
//! trajectories and gap tables. Every real is rounded to 9 significant
//! digits before it is written.

use std::io::Write;

use serde::{Serialize, Serializer};
use stardisc_core::admissibility::PropertyOutcome;
use stardisc_core::bounds::{BoundReport, Family, Optimum};
use stardisc_core::sequence::TrajectoryRecord;
use stardisc_core::variational::GapRecord;

use crate::fmt9;

pub fn round9(x: f64) -> f64 {
    fmt9(x).parse().unwrap_or(x)
}

fn r9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round9(*x))
}

fn r9_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round9(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRecord {
    #[serde(serialize_with = "r9")]
    pub a: f64,
    #[serde(serialize_with = "r9")]
    pub strong_bound: f64,
    #[serde(serialize_with = "r9")]
    pub strict_bound: f64,
    #[serde(serialize_with = "r9")]
    pub c_strong: f64,
    #[serde(serialize_with = "r9")]
    pub c_strict: f64,
}

impl From<&BoundReport> for BoundRecord {
    fn from(r: &BoundReport) -> Self {
        Self { a: r.a, strong_bound: r.strong_bound, strict_bound: r.strict_bound, c_strong: r.c_strong, c_strict: r.c_strict }
    }
}

/// One family evaluated at one `a`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyBoundRecord {
    pub family: &'static str,
    #[serde(serialize_with = "r9")]
    pub a: f64,
    #[serde(serialize_with = "r9")]
    pub bound: f64,
    #[serde(serialize_with = "r9")]
    pub c: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimumRecord {
    pub family: &'static str,
    #[serde(serialize_with = "r9")]
    pub a_star: f64,
    #[serde(serialize_with = "r9")]
    pub c_star: f64,
    pub unimodal: bool,
}

impl OptimumRecord {
    pub fn new(family: Family, o: &Optimum) -> Self {
        Self { family: family.name(), a_star: o.a_star, c_star: o.c_star, unimodal: o.unimodal }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscrepancyRecord {
    pub n: usize,
    #[serde(serialize_with = "r9")]
    pub dstar: f64,
}

/// Property id, verdict and the witness triple `(x, measured, threshold)`.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyRecord {
    pub property: String,
    pub passed: bool,
    #[serde(serialize_with = "r9_opt")]
    pub x: Option<f64>,
    #[serde(serialize_with = "r9_opt")]
    pub measured: Option<f64>,
    #[serde(serialize_with = "r9_opt")]
    pub threshold: Option<f64>,
    #[serde(serialize_with = "r9_opt", skip_serializing_if = "Option::is_none")]
    pub partner: Option<f64>,
}

impl From<&PropertyOutcome> for PropertyRecord {
    fn from(o: &PropertyOutcome) -> Self {
        let w = o.witness;
        Self {
            property: o.id.to_string(),
            passed: o.passed,
            x: w.map(|w| w.x),
            measured: w.map(|w| w.measured),
            threshold: w.map(|w| w.threshold),
            partner: w.and_then(|w| w.partner),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "r9")]
    pub dstar: f64,
    #[serde(serialize_with = "r9")]
    pub scaled: f64,
    #[serde(serialize_with = "r9_opt")]
    pub normalized: Option<f64>,
    #[serde(serialize_with = "r9_opt")]
    pub running_max: Option<f64>,
}

impl From<&TrajectoryRecord> for TrajectoryRow {
    fn from(r: &TrajectoryRecord) -> Self {
        Self { n: r.n, dstar: r.dstar, scaled: r.scaled, normalized: r.normalized, running_max: r.running_max }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub t: u32,
    #[serde(serialize_with = "r9")]
    pub oracle: f64,
    #[serde(serialize_with = "r9")]
    pub closed_form: f64,
    #[serde(serialize_with = "r9")]
    pub gap: f64,
}

impl From<&GapRecord> for GapRow {
    fn from(g: &GapRecord) -> Self {
        Self { t: g.t, oracle: g.oracle_objective, closed_form: g.closed_form, gap: g.gap }
    }
}

pub fn json_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records serialize")
}

/// Writes `rows` as CSV with a header line.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: impl IntoIterator<Item = T>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
