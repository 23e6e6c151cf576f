//! JSON report types. Every report carries the versioned "gddkit/1" schema
//! key; struct field order and shortest round-trip float formatting keep
//! serialized output byte-stable for identical inputs.

use crate::classify::ClassificationReport;
use crate::criteria::{CatalogEntry, CriterionResult};
use crate::eigen::InclusionReport;
use crate::regions::{RegionIndex, RegionSet};
use serde::Serialize;

pub const SCHEMA: &str = "gddkit/1";

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub n: usize,
    pub is_sdd: bool,
    pub is_z: bool,
    pub is_m: Option<bool>,
    pub is_h_gdd: bool,
    pub inconclusive: bool,
    pub jacobi_radius: Option<f64>,
    pub certificate: Option<Vec<f64>>,
    pub witness: Option<String>,
}

impl ClassifyReport {
    pub fn from_classification(input: &str, n: usize, rep: &ClassificationReport) -> Self {
        Self {
            schema: SCHEMA,
            command: "classify",
            input: input.to_string(),
            n,
            is_sdd: rep.is_sdd,
            is_z: rep.is_z,
            is_m: rep.is_m,
            is_h_gdd: rep.is_h_gdd,
            inconclusive: rep.inconclusive,
            jacobi_radius: rep.jacobi_radius,
            certificate: rep.certificate.as_ref().map(|c| c.values().to_vec()),
            witness: rep.witness.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CriterionRow {
    pub id: String,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub x: Option<String>,
    pub y: Option<String>,
    pub fired: bool,
    pub margin: f64,
}

impl From<&CriterionResult> for CriterionRow {
    fn from(r: &CriterionResult) -> Self {
        Self {
            id: r.id.clone(),
            alpha: r.alpha,
            beta: r.beta,
            x: r.x.clone(),
            y: r.y.clone(),
            fired: r.fired,
            margin: r.margin,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CriteriaReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub seed: Option<u64>,
    pub tau: f64,
    pub gdd_certified: bool,
    pub fired: Vec<String>,
    pub results: Vec<CriterionRow>,
}

/// One row of the `criteria --list` output.
#[derive(Debug, Serialize)]
pub struct CatalogRow {
    pub id: &'static str,
    pub theorem: &'static str,
    pub item: &'static str,
    pub pair_indexed: bool,
    pub uses_alpha: bool,
    pub uses_beta: bool,
    pub uses_x: bool,
    pub uses_y: bool,
    pub uses_gh: bool,
    pub note: Option<&'static str>,
}

impl From<&CatalogEntry> for CatalogRow {
    fn from(e: &CatalogEntry) -> Self {
        Self {
            id: e.id,
            theorem: e.theorem,
            item: e.item,
            pair_indexed: e.is_pair_indexed(),
            uses_alpha: e.uses_alpha,
            uses_beta: e.uses_beta,
            uses_x: e.uses_x,
            uses_y: e.uses_y,
            uses_gh: e.uses_gh,
            note: e.note,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CatalogListing {
    pub schema: &'static str,
    pub command: &'static str,
    pub entries: Vec<CatalogRow>,
}

#[derive(Debug, Serialize)]
pub struct WitnessRow {
    pub re: f64,
    pub im: f64,
    pub contained: bool,
    pub witness: Option<String>,
    pub margin: f64,
}

#[derive(Debug, Serialize)]
pub struct VerifyBlock {
    pub def: String,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub violations: usize,
    pub records: Vec<WitnessRow>,
}

impl VerifyBlock {
    pub fn from_report(set: &RegionSet, rep: &InclusionReport) -> Self {
        let records = rep
            .records
            .iter()
            .map(|r| WitnessRow {
                re: r.eigenvalue.re,
                im: r.eigenvalue.im,
                contained: r.contained,
                witness: r.witness.map(|w| match w {
                    RegionIndex::Point(i) => format!("i={i}"),
                    RegionIndex::Pair(i, j) => format!("i={i},j={j}"),
                }),
                margin: r.margin,
            })
            .collect();
        Self {
            def: set.provenance.def.label().to_string(),
            k: set.provenance.k,
            alpha: set.provenance.alpha,
            beta: set.provenance.beta,
            violations: rep.violations,
            records,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub tol: f64,
    pub spectrum_source: String,
    pub spectrum: Vec<(f64, f64)>,
    pub total_violations: usize,
    pub blocks: Vec<VerifyBlock>,
}

#[derive(Debug, Serialize)]
pub struct RegionSetRow {
    pub def: String,
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub params: String,
    pub regions: usize,
    pub cells_set: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct RegionsReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub input: String,
    pub resolution: (usize, usize),
    pub bbox: ((f64, f64), (f64, f64)),
    pub sets: Vec<RegionSetRow>,
    /// Present when an intersection mask was requested; a finite sample of
    /// the underlying parameter family, hence an outer approximation.
    pub intersection: Option<IntersectionRow>,
}

#[derive(Debug, Serialize)]
pub struct IntersectionRow {
    pub label: &'static str,
    pub member_sets: usize,
    pub cells_set: usize,
}

#[derive(Debug, Serialize)]
pub struct BundleReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub classify: ClassifyReport,
    pub criteria: CriteriaReport,
    pub verify: VerifyReport,
}

/// Serializes any report with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
