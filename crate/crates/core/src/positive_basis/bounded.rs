use super::{ear_positive_basis, span_without, PositiveBasis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{
    is_two_connected, minimal_cycle_basis, shortest_cycle_through, simple_cycle_decomposition, simple_cycles, ChargedGraph,
    CycleSubgraph, EdgeVector, Gf2Basis,
};

/// Positive basis whose cycles have length at most `3 * phi(h)`, with as
/// many positive three- and four-cycles as a greedy exchange can fit.
///
/// Starts from the minimal cycle basis `C_1..C_nu` with `C_1` its shortest
/// negative cycle, takes `C_1 + C_i` for negative `C_i` and `C_j` for
/// positive `C_j`, and replaces every non-simple element by a positive
/// simple cycle outside the span of the others.
pub fn bounded_positive_basis(h: &ChargedGraph) -> Result<PositiveBasis> {
    if !is_two_connected(h) {
        return Err(Error::NotTwoConnected);
    }
    let mcb = minimal_cycle_basis(h);
    let Some(first_neg) = mcb.iter().position(|c| !c.charge(h).is_plus()) else {
        let mut b = PositiveBasis::new(h, mcb, Provenance::Bounded);
        augment_short_cycles(h, &mut b.cycles)?;
        return Ok(b);
    };
    let c1 = mcb[first_neg].to_vector(h);
    let mut elems: Vec<CycleSubgraph> = Vec::with_capacity(mcb.len() - 1);
    for (i, c) in mcb.iter().enumerate() {
        if i == first_neg {
            continue;
        }
        if c.charge(h).is_plus() {
            elems.push(c.clone());
        } else {
            elems.push(CycleSubgraph::from_vector(h, &c1.sum(&c.to_vector(h))?)?);
        }
    }
    for t in 0..elems.len() {
        if elems[t].is_simple() {
            continue;
        }
        let vecs: Vec<EdgeVector> = elems.iter().map(|c| c.to_vector(h)).collect();
        let rest = span_without(h, &vecs, t);
        elems[t] = simple_replacement(h, &elems[t], &rest)?;
    }
    augment_short_cycles(h, &mut elems)?;
    Ok(PositiveBasis::new(h, elems, Provenance::Bounded))
}

/// A positive simple cycle outside `rest`, for a positive non-simple `c`
/// outside `rest`.
fn simple_replacement(h: &ChargedGraph, c: &CycleSubgraph, rest: &Gf2Basis) -> Result<CycleSubgraph> {
    let mut parts = simple_cycle_decomposition(h, c);
    parts.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    if let Some(f) = parts.iter().find(|f| f.charge(h).is_plus() && !rest.in_span(&f.to_vector(h))) {
        return Ok(f.clone());
    }
    let negs: Vec<&CycleSubgraph> = parts.iter().filter(|f| !f.charge(h).is_plus()).collect();
    let f1 = negs
        .first()
        .ok_or_else(|| Error::Invariant("positive element outside span has no negative component".into()))?;
    let v1 = f1.to_vector(h);
    let fj = negs[1..]
        .iter()
        .find(|f| !rest.in_span(&v1.sum(&f.to_vector(h)).expect("same graph")))
        .ok_or_else(|| Error::Invariant("no pair of negative components leaves the span".into()))?;
    let mut union: Vec<usize> = f1.edges().iter().chain(fj.edges()).copied().collect();
    let shared = {
        let a = f1.vertices(h);
        fj.vertices(h).iter().filter(|v| a.contains(v)).count()
    };
    if shared <= 1 {
        let mut best: Option<CycleSubgraph> = None;
        for &e in f1.edges() {
            for &f in fj.edges() {
                if let Some(c) = shortest_cycle_through(h, e, f)? {
                    if best.as_ref().map_or(true, |b| c.sort_key() < b.sort_key()) {
                        best = Some(c);
                    }
                }
            }
        }
        let joint = best.ok_or_else(|| Error::Invariant("negative components lie in different blocks".into()))?;
        union.extend_from_slice(joint.edges());
    }
    union.sort_unstable();
    union.dedup();
    let sub = h.edge_subgraph(&union);
    let local = ear_positive_basis(&sub.graph)?;
    let mut cands: Vec<CycleSubgraph> = local
        .cycles
        .iter()
        .map(|c| CycleSubgraph::from_edges(h, &sub.lift_edges(c.edges())))
        .collect::<Result<_>>()?;
    cands.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    cands
        .into_iter()
        .find(|c| !rest.in_span(&c.to_vector(h)))
        .ok_or_else(|| Error::Invariant("ear basis of the joined subgraph lies in the span".into()))
}

/// Exchanges positive three-cycles, then four-cycles, into the basis: each
/// replaces the longest element of its representation when that element is
/// longer than it.
pub(crate) fn augment_short_cycles(h: &ChargedGraph, elems: &mut [CycleSubgraph]) -> Result<()> {
    let short: Vec<CycleSubgraph> = simple_cycles(h, 4, usize::MAX)?.into_iter().filter(|c| c.charge(h).is_plus()).collect();
    let build = |elems: &[CycleSubgraph]| Gf2Basis::from_vectors(h, &elems.iter().map(|c| c.to_vector(h)).collect::<Vec<_>>());
    let mut span = build(elems);
    for cand in &short {
        let rep = span
            .express(&cand.to_vector(h))
            .ok_or_else(|| Error::Invariant("positive cycle outside the positive basis span".into()))?;
        let Some(&longest) = rep.iter().max_by_key(|&&i| (elems[i].len(), std::cmp::Reverse(i))) else {
            continue;
        };
        if elems[longest].len() > cand.len() {
            elems[longest] = cand.clone();
            span = build(elems);
        }
    }
    Ok(())
}
