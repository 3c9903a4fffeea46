//! Machine-readable reports. The JSON schema is stable across runs: all maps
//! are ordered, matrices are serialized row-major with rational literals, and
//! the timing field is the only nondeterministic entry (golden comparisons
//! strip it).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::kernel::SparseMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    /// row-major rational literals
    pub entries: Vec<Vec<String>>,
}

impl From<&SparseMatrix> for MatrixReport {
    fn from(m: &SparseMatrix) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.dense_literals(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct DimensionTable {
    /// "(h, w)" -> dimension; zero cells are omitted
    pub cells: BTreeMap<String, usize>,
}

impl DimensionTable {
    pub fn from_cells(cells: &BTreeMap<(i64, i64), usize>) -> Self {
        DimensionTable {
            cells: cells
                .iter()
                .filter(|(_, &d)| d > 0)
                .map(|(&(h, w), &d)| (format!("({h},{w})"), d))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub field: String,
    pub bounds: BTreeMap<String, i64>,
    pub verdict: String,
    pub stages: Vec<StageReport>,
    pub dimension_tables: BTreeMap<String, DimensionTable>,
    /// Δ matrices per cell, in both models
    pub delta_matrices: BTreeMap<String, BTreeMap<String, MatrixReport>>,
    pub identification: BTreeMap<String, MatrixReport>,
    pub sign_profile: BTreeMap<String, String>,
    /// wall-clock milliseconds; excluded from golden comparisons
    pub timing_ms: u128,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// JSON with the timing field normalized, for byte-identical comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut clone = self.clone();
        clone.timing_ms = 0;
        clone.to_json()
    }
}
