use super::{assemble_signs, SignTable};
use crate::error::{Error, Result};
use crate::graph::{blocks, phi_with_witness, ChargedGraph, CycleSubgraph};
use crate::minors::Matrix;
use crate::positive_basis::exact_min_positive_basis;
use crate::sign::Sign;
use crate::tol::Tolerances;

/// `s(C)` read off a matrix: product of `sgn K_ij` over the `i < j` edges.
pub fn matrix_cycle_sign(k: &Matrix, g: &ChargedGraph, c: &CycleSubgraph) -> Sign {
    c.edges()
        .iter()
        .map(|&e| {
            let (i, j) = g.edge(e);
            Sign::of(k[(i, j)])
        })
        .product()
}

/// A matrix with the same magnitudes and the same `s` on every cycle of an
/// exact minimal positive basis except one longest cycle `C_1`, whose sign
/// is flipped. It agrees with `k` on every minor of order below the simple
/// cycle sparsity and differs on `Delta_(V(C_1))`.
pub fn flip_construction(k: &Matrix) -> Result<Matrix> {
    let g = k.sparsity_graph(Tolerances::default().zero);
    let dec = blocks(&g);
    let mut best = None;
    for b in dec.nontrivial() {
        let basis = exact_min_positive_basis(b.graph())?;
        let len = basis.max_len();
        if len >= 3 && best.as_ref().map_or(true, |(l, _, _)| len > *l) {
            best = Some((len, b, basis));
        }
    }
    let (_, block, basis) = best.ok_or_else(|| Error::Precondition("simple cycle sparsity is 2; nothing to flip".into()))?;
    let last = basis.cycles.len() - 1;
    let mut table = SignTable::new(&g);
    for (t, c) in basis.cycles.iter().enumerate() {
        let gc = CycleSubgraph::from_edges(&g, &block.sub.lift_edges(c.edges()))?;
        let s = matrix_cycle_sign(k, &g, &gc);
        table.record(&g, &gc, if t == last { -s } else { s });
    }
    let mut out = k.clone();
    for (e, s) in assemble_signs(&g, block, &table)? {
        let (i, j) = g.edge(e);
        let v = s.to_f64() * k[(i, j)].abs();
        out[(i, j)] = v;
        out[(j, i)] = g.charge(e).to_f64() * v;
    }
    Ok(out)
}

/// Recharges `g` with `-1` on a pair of edges attaining `phi` and `+1`
/// elsewhere, so every positive basis of that block needs a cycle through
/// both edges. Acyclic graphs come back all positive.
pub fn adversarial_charges(g: &ChargedGraph) -> Result<ChargedGraph> {
    let (_, pair) = phi_with_witness(g)?;
    let mut charges = vec![Sign::Plus; g.m()];
    if let Some((e, f)) = pair {
        charges[e] = Sign::Minus;
        charges[f] = Sign::Minus;
    }
    g.with_charges(&charges)
}
