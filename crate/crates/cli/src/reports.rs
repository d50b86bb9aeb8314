//! Machine-readable reports. All reports are JSON with a schema version;
//! dimension tables can additionally be projected to CSV. Serialization is
//! deterministic: plain structs and vectors, no maps, no timestamps.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct GroupDim {
    pub degree: usize,
    /// 1-based simple labels: the group is Ext^degree(S_source, S_target).
    pub source: usize,
    pub target: usize,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct ExtReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    /// Nonzero groups only, ordered by (degree, source, target).
    pub dims: Vec<GroupDim>,
    /// Total dimension per degree 0..=max_degree.
    pub totals: Vec<usize>,
}

#[derive(Serialize)]
pub struct ChainItem {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    /// 1-based arrow indices of the path.
    pub arrows: Vec<usize>,
}

#[derive(Serialize)]
pub struct ChainsReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: String,
    pub max_degree: usize,
    pub counts: Vec<usize>,
    pub chains: Vec<ChainItem>,
}

#[derive(Serialize)]
pub struct BasisEntry {
    pub id: u32,
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub index: usize,
}

#[derive(Serialize)]
pub struct ValueEntry {
    pub k: usize,
    pub inputs: Vec<u32>,
    /// Sparse output: (basis id, exact scalar string).
    pub output: Vec<(u32, String)>,
}

#[derive(Serialize)]
pub struct TransferReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub k_max: usize,
    pub trust_bound: usize,
    pub basis: Vec<BasisEntry>,
    pub values: Vec<ValueEntry>,
}

#[derive(Serialize)]
pub struct StasheffReportOut {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub k_max: usize,
    pub tuples_checked: usize,
    pub violations: Vec<(usize, Vec<u32>)>,
    pub mutation_corrupted: Option<(usize, Vec<u32>)>,
    pub mutation_detected: bool,
    pub pass: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum TreeOut {
    Seed { seed: u32 },
    Op { op: usize, args: Vec<TreeOut> },
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub class: GroupDim,
    pub tree: TreeOut,
}

#[derive(Serialize)]
pub struct DegreeOut {
    pub degree: usize,
    pub dim_ext: usize,
    pub dim_closure: usize,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct GenerationReportOut {
    pub schema_version: u32,
    pub command: &'static str,
    pub algebra: String,
    pub field: String,
    pub max_degree: usize,
    pub k_max: usize,
    pub degrees: Vec<DegreeOut>,
    pub witnesses: Vec<WitnessOut>,
    pub rounds: usize,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct BuildBReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub lengths: Vec<usize>,
    pub derived_image_lengths: Vec<usize>,
    pub p: usize,
    pub kupisch: Vec<usize>,
}

#[derive(Serialize)]
pub struct MEllOut {
    pub ell: usize,
    pub d: usize,
    pub scalar: Option<String>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VanishingOut {
    pub ext2_violations: Vec<(usize, usize)>,
    pub top_violations: Vec<usize>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct KellerReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub field: String,
    pub lengths: Vec<usize>,
    pub p: usize,
    pub kupisch: Vec<usize>,
    pub ell: usize,
    pub d: usize,
    pub gamma: GroupDim,
    pub m_ell: MEllOut,
    pub vanishing: VanishingOut,
    pub stasheff_pass: bool,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct MadsenPatternEntry {
    pub k: usize,
    pub nonzero: bool,
}

#[derive(Serialize)]
pub struct MadsenReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub ell: usize,
    pub field: String,
    pub max_degree: usize,
    /// dim Ext^n for n = 0..=max_degree (all ones).
    pub dims: Vec<usize>,
    pub m2_uu_is_zero: bool,
    /// Zero/nonzero pattern of m_k(u,..,u) for k = 2..=ell.
    pub pattern: Vec<MadsenPatternEntry>,
    pub m_ell_scalar: String,
    pub pass: bool,
}

/// Serializes a report to its canonical byte form (pretty JSON plus a
/// trailing newline); identical runs give identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// CSV projection of a dimension table: `degree,source,target,dim`.
pub fn dims_to_csv(dims: &[GroupDim]) -> String {
    let mut out = String::from("degree,source,target,dim\n");
    for g in dims {
        out.push_str(&format!("{},{},{},{}\n", g.degree, g.source, g.target, g.dim));
    }
    out
}
