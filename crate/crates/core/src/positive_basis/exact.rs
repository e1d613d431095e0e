use super::{PositiveBasis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{blocks, is_two_connected, simple_cycles, ChargedGraph, Gf2Basis};

/// Default edge limit for the exhaustive routines.
pub const EXACT_EDGE_CAP: usize = 20;

/// Lexicographically minimal positive simple cycle basis by enumerating all
/// positive simple cycles and keeping them greedily, shortest first.
pub fn exact_min_positive_basis(h: &ChargedGraph) -> Result<PositiveBasis> {
    exact_min_positive_basis_with_cap(h, EXACT_EDGE_CAP)
}

pub fn exact_min_positive_basis_with_cap(h: &ChargedGraph, cap: usize) -> Result<PositiveBasis> {
    if h.m() > cap {
        return Err(Error::CapExceeded(format!("{} edges exceed the exhaustive limit of {cap}", h.m())));
    }
    if !is_two_connected(h) {
        return Err(Error::NotTwoConnected);
    }
    let dim = super::cplus_dimension(h);
    let mut span = Gf2Basis::new(h);
    let mut out = Vec::with_capacity(dim);
    for c in simple_cycles(h, h.n(), usize::MAX)? {
        if out.len() == dim {
            break;
        }
        if c.charge(h).is_plus() && span.insert(&c.to_vector(h)).is_some() {
            out.push(c);
        }
    }
    Ok(PositiveBasis::new(h, out, Provenance::Exact))
}

/// Longest cycle of an exact minimal positive basis, maximized over blocks;
/// `2` when no block contributes a cycle.
pub fn simple_cycle_sparsity(g: &ChargedGraph) -> Result<usize> {
    simple_cycle_sparsity_with_cap(g, EXACT_EDGE_CAP)
}

pub(crate) fn simple_cycle_sparsity_with_cap(g: &ChargedGraph, cap: usize) -> Result<usize> {
    let mut best = 2;
    for b in blocks(g).nontrivial() {
        best = best.max(exact_min_positive_basis_with_cap(b.graph(), cap)?.max_len());
    }
    Ok(best)
}
