//! JSON file formats.
//!
//! Vertices and subset keys in files are 1-based. Reals are written by
//! `serde_json`, whose shortest round-trip representation reads back to the
//! identical `f64`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ChargedGraph;
use crate::minors::{principal_minor, Matrix};
use crate::noisy::NoiseMode;
use crate::positive_basis::{PositiveBasis, Provenance};
use crate::recovery::RecoveryResult;
use crate::sign::Sign;
use crate::subset;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `text` plus a trailing newline.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<f64>,
}

pub fn matrix_to_json(k: &Matrix) -> String {
    pretty(&MatrixFile {
        n: k.n(),
        entries: k.data().to_vec(),
    })
}

pub fn matrix_from_json(s: &str) -> Result<Matrix> {
    let f: MatrixFile = serde_json::from_str(s).map_err(parse_err)?;
    Matrix::from_vec(f.n, f.entries)
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    matrix_from_json(&read_file(path)?)
}

pub fn write_matrix(path: &Path, k: &Matrix) -> Result<()> {
    write_file(path, &matrix_to_json(k))
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    /// `[i, j, charge, magnitude]`, 1-based
    edges: Vec<(usize, usize, i64, f64)>,
}

pub fn graph_to_json(g: &ChargedGraph) -> String {
    pretty(&GraphFile {
        n: g.n(),
        edges: (0..g.m())
            .map(|e| {
                let (i, j) = g.edge(e);
                (i + 1, j + 1, g.charge(e).to_i64(), g.magnitude(e))
            })
            .collect(),
    })
}

pub fn graph_from_json(s: &str) -> Result<ChargedGraph> {
    let f: GraphFile = serde_json::from_str(s).map_err(parse_err)?;
    let mut edges = Vec::with_capacity(f.edges.len());
    for (i, j, c, w) in f.edges {
        if i == 0 || j == 0 {
            return Err(Error::Parse("graph vertices are 1-based".into()));
        }
        let c = Sign::from_i64(c).ok_or_else(|| Error::Parse(format!("charge {c} is not +-1")))?;
        edges.push((i - 1, j - 1, c, w));
    }
    ChargedGraph::new(f.n, edges)
}

pub fn read_graph(path: &Path) -> Result<ChargedGraph> {
    graph_from_json(&read_file(path)?)
}

/// Every principal minor of `k` with `1 <= |S| <= max_order`, keyed by
/// sorted 0-based subsets.
pub fn minor_table(k: &Matrix, max_order: usize) -> Result<HashMap<Vec<usize>, f64>> {
    let mut out = HashMap::new();
    for s in subset::all_subsets(k.n()).filter(|s| !s.is_empty() && s.len() <= max_order) {
        let v = principal_minor(k, &s)?;
        out.insert(s, v);
    }
    Ok(out)
}

/// Sorted by key; the empty set is written as `"": 1`.
pub fn minor_table_to_json(table: &HashMap<Vec<usize>, f64>) -> String {
    let mut m: BTreeMap<(usize, Vec<usize>), (String, f64)> = BTreeMap::new();
    m.insert((0, Vec::new()), (String::new(), 1.0));
    for (s, &v) in table {
        m.insert((s.len(), s.clone()), (subset::key(s), v));
    }
    let mut out = serde_json::Map::new();
    for (_, (k, v)) in m {
        out.insert(k, serde_json::json!(v));
    }
    pretty(&out)
}

/// Parses a minor table; returns `n` (the largest index present) and the
/// nonempty entries.
pub fn minor_table_from_json(s: &str) -> Result<(usize, HashMap<Vec<usize>, f64>)> {
    let m: BTreeMap<String, f64> = serde_json::from_str(s).map_err(parse_err)?;
    let mut table = HashMap::new();
    let mut n = 0;
    for (k, v) in m {
        let sub = subset::parse_key(&k)?;
        if let Some(&last) = sub.last() {
            n = n.max(last + 1);
            table.insert(sub, v);
        } else if v != 1.0 {
            return Err(Error::Parse(format!("minor of the empty set must be 1, got {v}")));
        }
    }
    Ok((n, table))
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    provenance: Provenance,
    /// each cycle as its edges `[i, j]`, 1-based
    cycles: Vec<Vec<(usize, usize)>>,
}

/// `h` is the graph the basis lives on.
pub fn basis_to_json(h: &ChargedGraph, b: &PositiveBasis) -> String {
    pretty(&BasisFile {
        provenance: b.provenance,
        cycles: b
            .cycles
            .iter()
            .map(|c| c.edges().iter().map(|&e| h.edge(e)).map(|(i, j)| (i + 1, j + 1)).collect())
            .collect(),
    })
}

/// The statistics block of a recovery run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryStats {
    pub queries: usize,
    pub max_order: usize,
    pub phi: usize,
    pub blocks: usize,
}

impl From<&RecoveryResult> for RecoveryStats {
    fn from(r: &RecoveryResult) -> Self {
        RecoveryStats {
            queries: r.queries,
            max_order: r.max_order,
            phi: r.phi,
            blocks: r.blocks,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    Random,
    Adversarial,
}

/// A noise specification file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub delta: f64,
    pub mode: NoiseKind,
    #[serde(default)]
    pub seed: u64,
    /// subset key -> offset
    #[serde(default)]
    pub offsets: BTreeMap<String, f64>,
}

impl NoiseSpec {
    pub fn from_json(s: &str) -> Result<NoiseSpec> {
        serde_json::from_str(s).map_err(parse_err)
    }

    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn noise_mode(&self) -> Result<NoiseMode> {
        Ok(match self.mode {
            NoiseKind::Random => NoiseMode::Random { seed: self.seed },
            NoiseKind::Adversarial => {
                let mut offsets = HashMap::new();
                for (k, &v) in &self.offsets {
                    offsets.insert(subset::parse_key(k)?, v);
                }
                NoiseMode::Adversarial { offsets }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_exact() {
        let k = Matrix::from_rows(&[vec![0.1, -1.0 / 3.0], vec![1.0 / 3.0, 2f64.sqrt()]]).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&k)).unwrap(), k);
        assert!(matrix_from_json(r#"{"n": 2, "entries": [1, 2, 3]}"#).is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = ChargedGraph::new(3, vec![(0, 1, Sign::Minus, 0.5), (1, 2, Sign::Plus, 0.25)]).unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
        assert!(graph_from_json(r#"{"n": 2, "edges": [[0, 1, 1, 1.0]]}"#).is_err());
    }

    #[test]
    fn minor_table_round_trip() {
        let k = Matrix::from_rows(&[vec![0.5, 0.2], vec![-0.2, 0.3]]).unwrap();
        let t = minor_table(&k, 2).unwrap();
        let text = minor_table_to_json(&t);
        assert!(text.contains("\"1,2\""));
        let (n, back) = minor_table_from_json(&text).unwrap();
        assert_eq!(n, 2);
        assert_eq!(back, t);
    }

    #[test]
    fn noise_spec_parses() {
        let s = NoiseSpec::from_json(r#"{"delta": 0.01, "mode": "adversarial", "offsets": {"1,2": -0.005}}"#).unwrap();
        match s.noise_mode().unwrap() {
            NoiseMode::Adversarial { offsets } => assert_eq!(offsets[&vec![0, 1]], -0.005),
            other => panic!("{other:?}"),
        }
        assert!(NoiseSpec::from_json(r#"{"delta": 0.01, "mode": "loud"}"#).is_err());
    }
}
