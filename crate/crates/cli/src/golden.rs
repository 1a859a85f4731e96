//! Reference values with citations, loaded from `data/golden.json`.

use serde::Deserialize;

const GOLDEN_JSON: &str = include_str!("../data/golden.json");

/// A value together with the place it is stated.
#[derive(Clone, Debug, Deserialize)]
pub struct Cited<T> {
    pub value: T,
    #[serde(rename = "ref")]
    pub citation: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WordCount {
    pub word: String,
    pub count: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WordChi {
    pub word: String,
    pub chi: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TotalChi {
    pub k: i64,
    pub total: i64,
    #[serde(rename = "ref")]
    pub citation: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub m: u32,
    pub regular_degrees: Option<Cited<Vec<u32>>>,
    pub torsion_group: Option<Cited<Vec<u64>>>,
    pub reduced_torsion_order: Option<Cited<u64>>,
    pub reduced_torsion: Option<Cited<Vec<u64>>>,
    pub orbits: Option<Cited<Vec<u64>>>,
    pub subgroup_type: Option<Cited<String>>,
    pub base_bundle: Option<Cited<Vec<String>>>,
    pub level_simple_roots: Option<Cited<Vec<String>>>,
    pub clans: Option<Cited<Vec<Vec<String>>>>,
    pub point_counts: Option<Cited<Vec<WordCount>>>,
    pub fiber_chi: Option<Cited<Vec<WordChi>>>,
    #[serde(default)]
    pub total_chi: Vec<TotalChi>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenCase {
    #[serde(rename = "type")]
    pub label: String,
    pub rank: usize,
    pub en: Cited<Vec<u32>>,
    pub rows: Vec<GoldenRow>,
}

impl GoldenCase {
    pub fn row(&self, m: u32) -> Option<&GoldenRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Golden {
    pub cases: Vec<GoldenCase>,
}

impl Golden {
    pub fn case(&self, label: &str, rank: usize) -> Option<&GoldenCase> {
        self.cases
            .iter()
            .find(|c| c.label == label && c.rank == rank)
    }
}

/// The bundled reference table.
pub fn load() -> Golden {
    serde_json::from_str(GOLDEN_JSON).expect("bundled golden data is valid JSON")
}
