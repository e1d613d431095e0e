use super::ChargedGraph;
use crate::error::Result;
use crate::minors::MinorOracle;
use crate::sign::Sign;

/// Charged sparsity graph and diagonal from the minors of order one and
/// two: `K_ii = Delta_i`, and `{i, j}` is an edge with charge
/// `sgn(Delta_i Delta_j - Delta_ij)` and magnitude `sqrt|.|` whenever
/// `|Delta_i Delta_j - Delta_ij| >= zero`.
pub fn graph_from_low_order_minors(oracle: &dyn MinorOracle, zero: f64) -> Result<(ChargedGraph, Vec<f64>)> {
    graph_with_threshold(oracle, zero, 0.0)
}

/// As [`graph_from_low_order_minors`], but an edge additionally needs
/// `|Delta_i Delta_j - Delta_ij| > floor`.
pub(crate) fn graph_with_threshold(oracle: &dyn MinorOracle, zero: f64, floor: f64) -> Result<(ChargedGraph, Vec<f64>)> {
    let n = oracle.n();
    let diag = (0..n).map(|i| oracle.query(&[i])).collect::<Result<Vec<f64>>>()?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let x = diag[i] * diag[j] - oracle.query(&[i, j])?;
            if x.abs() >= zero && x.abs() > floor {
                edges.push((i, j, Sign::of(x), x.abs().sqrt()));
            }
        }
    }
    Ok((ChargedGraph::new(n, edges)?, diag))
}
