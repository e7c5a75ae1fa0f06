//! The JSON report. Everything except `timing` is a function of the job and
//! its inputs.

use std::collections::BTreeMap;

use serde::Serialize;
use weightforge::actions::ActionTable;
use weightforge::bridge::{BlockActionView, OutsideDefectZero};
use weightforge::equivcheck::{BijectionCertificate, IsomorphismReport};
use weightforge::weights::{AwcReport, WeightReport};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub input_digest: String,
    pub job: JobEcho,
    pub group: GroupSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awc: Option<AwcReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaw: Option<GawSection>,
    pub verdicts: BTreeMap<String, String>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct JobEcho {
    pub group: String,
    pub prime: Option<u64>,
    pub checks: Vec<String>,
    pub galois_t: i64,
    pub automorphisms: Vec<String>,
    pub max_order: u64,
    pub max_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub order: u64,
    pub size: u64,
    pub centralizer_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSection {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub order_factorization: String,
    pub classes: Vec<ClassRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_regular_classes: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSection {
    /// `fixture`, `file` or `computed`.
    pub source: String,
    pub names: Vec<String>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<String>>,
    /// Set when a computed table was compared with a fixture.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub label: String,
    pub defect: u32,
    pub principal: bool,
    pub characters: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksSection {
    pub blocks: Vec<BlockRow>,
    /// `(block, weight)` for the blocks of defect zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_zero_weights: Option<Vec<(String, String)>>,
    pub action: BlockActionView,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightsSection {
    #[serde(flatten)]
    pub summary: WeightReport,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitsSection {
    pub gamma: Vec<String>,
    pub characters: Vec<Vec<String>>,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GawSection {
    pub weights: ActionTable,
    pub ibr: ActionTable,
    pub isomorphism: IsomorphismReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<BijectionCertificate>,
    pub outside_defect_zero: Vec<OutsideDefectZero>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub steps: Vec<(String, f64)>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Any verdict that refutes a claim.
    pub fn is_refuted(&self) -> bool {
        self.verdicts.values().any(|v| REFUTING.contains(&v.as_str()))
    }
}

pub const REFUTING: &[&str] = &["UNEQUAL", "REFUTED_COUNT", "REFUTED_FIXEDPOINTS", "DISAGREE", "FIXTURE_MISMATCH"];

/// The report as a JSON value without its timing section.
pub fn without_timing(json: &str) -> serde_json::Result<serde_json::Value> {
    let mut v: serde_json::Value = serde_json::from_str(json)?;
    if let Some(m) = v.as_object_mut() {
        m.remove("timing");
    }
    Ok(v)
}
