use std::collections::HashSet;

use super::chords::{chord_violation, chords_of};
use crate::error::{Error, Result};
use crate::graph::enumerate::simple_paths;
use crate::graph::{ChargedGraph, CycleSubgraph};

/// Default limit on enumerated paths when verifying a candidate edge.
pub const PATH_CAP: usize = 1_000_000;

/// A vertex ordering `i_1 .. i_k` of a basis cycle in which every positive
/// simple cycle of the induced subgraph through `{i_1, i_k}` is Hamiltonian
/// and uses chords only in crossed pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanOrder {
    /// vertices `i_1 .. i_k`
    pub order: Vec<usize>,
    /// `l` (1-based): every chord `{i_p, i_q}`, `p < q`, has `p <= l < q`
    pub split: usize,
    /// crossed chord pairs as 0-based positions `(a, b)`: chords
    /// `{i_a, i_(b-1)}` and `{i_(a+1), i_b}`
    pub crossings: Vec<(usize, usize)>,
    /// edge `{i_1, i_k}`
    pub edge: usize,
}

/// Finds the spanning edge `{i_1, i_k}` of a positive simple cycle whose
/// chords satisfy the chord properties.
///
/// Candidate edges come first from a shortest one-chord cycle (and its
/// overlap with a crossing chord's shortest cycle), then from the whole
/// cycle; each candidate is verified by enumerating the simple paths
/// between its endpoints, at most `cap` of them.
pub fn span_edge_order(h: &ChargedGraph, c: &CycleSubgraph, cap: usize) -> Result<SpanOrder> {
    if !c.is_simple() || !c.charge(h).is_plus() {
        return Err(Error::Precondition("span order needs a positive simple cycle".into()));
    }
    if let Some(v) = chord_violation(h, c) {
        return Err(Error::Precondition(format!("cycle violates the chord properties: {v:?}")));
    }
    let base = c.vertex_order(h).expect("simple");
    let k = base.len();
    let cyc_edge = |t: usize| h.edge_index(base[t % k], base[(t + 1) % k]).expect("cycle edge");
    let arc = |(p, q): (usize, usize), inner: bool| -> Vec<usize> {
        let (from, to) = if inner { (p, q) } else { (q, p + k) };
        (from..to).map(cyc_edge).collect()
    };
    let chords = chords_of(h, c);
    let mut cands: Vec<usize> = Vec::new();
    if chords.is_empty() {
        cands.push(cyc_edge(k - 1));
    } else {
        let split_len = |x: (usize, usize), inner: bool| if inner { x.1 - x.0 + 1 } else { k - (x.1 - x.0) + 1 };
        let (x, side) = chords
            .iter()
            .flat_map(|&x| [(x, true), (x, false)])
            .min_by_key(|&(x, s)| split_len(x, s))
            .expect("nonempty");
        let best = arc(x, side);
        let crossed = chords
            .iter()
            .copied()
            .find(|&y| (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1));
        if let Some(y) = crossed {
            for s in [true, false] {
                if split_len(y, s) == split_len(x, side) {
                    let other = arc(y, s);
                    cands.extend(best.iter().filter(|e| other.contains(e)));
                }
            }
        }
        cands.extend(best);
    }
    cands.extend((0..k).map(cyc_edge));
    let mut seen = HashSet::new();
    cands.retain(|e| seen.insert(*e));
    for e in cands {
        if let Some(s) = verify(h, &base, e, cap)? {
            return Ok(s);
        }
    }
    Err(Error::Invariant("no cycle edge has the spanning property".into()))
}

fn verify(h: &ChargedGraph, base: &[usize], e: usize, cap: usize) -> Result<Option<SpanOrder>> {
    let k = base.len();
    let (u, w) = h.edge(e);
    let (first, last) = (u.min(w), u.max(w));
    let pf = base.iter().position(|&v| v == first).expect("on cycle");
    let step = if base[(pf + 1) % k] == last { k - 1 } else { 1 };
    let order: Vec<usize> = (0..k).map(|t| base[(pf + t * step) % k]).collect();
    debug_assert_eq!(order[k - 1], last);
    let mut pos = vec![usize::MAX; h.n()];
    for (t, &v) in order.iter().enumerate() {
        pos[v] = t;
    }
    let is_cycle_edge = |p: usize, q: usize| q - p == 1 || (p == 0 && q == k - 1);
    let mut chords = Vec::new();
    for p in 0..k {
        for q in p + 2..k {
            if !is_cycle_edge(p, q) && h.has_edge(order[p], order[q]) {
                chords.push((p, q));
            }
        }
    }
    let split = match chords.iter().map(|c| c.0).max() {
        None => 1,
        Some(max_p) => {
            if chords.iter().any(|c| c.1 <= max_p) {
                return Ok(None);
            }
            max_p + 1
        }
    };
    let is_chord = |p: usize, q: usize| chords.binary_search(&(p.min(q), p.max(q))).is_ok();
    let mut crossings = Vec::new();
    for a in 0..k {
        for b in a + 3..k {
            if is_chord(a, b - 1) && is_chord(a + 1, b) {
                crossings.push((a, b));
            }
        }
    }
    let mut rails = HashSet::new();
    for &(a, b) in &crossings {
        if !rails.insert(a) || !rails.insert(b - 1) {
            return Ok(None);
        }
    }
    let sub = h.induced(&order);
    let g = &sub.graph;
    let local = |v: usize| sub.vertices.binary_search(&v).expect("in subgraph");
    let skip = g.edge_index(local(first), local(last));
    let charge_e = h.charge(e);
    let mut ok = true;
    simple_paths(g, local(first), local(last), skip, k, cap, &mut |verts, edges| {
        let charge: crate::sign::Sign = edges.iter().map(|&x| g.charge(x)).product::<crate::sign::Sign>() * charge_e;
        if !charge.is_plus() {
            return Ok(true);
        }
        if verts.len() != k {
            ok = false;
            return Ok(false);
        }
        let mut used = HashSet::new();
        for win in verts.windows(2) {
            let (p, q) = (pos[sub.vertices[win[0]]], pos[sub.vertices[win[1]]]);
            let (p, q) = (p.min(q), p.max(q));
            if !is_cycle_edge(p, q) {
                used.insert((p, q));
            }
        }
        let mut covered = 0;
        for &(a, b) in &crossings {
            let n = used.contains(&(a, b - 1)) as usize + used.contains(&(a + 1, b)) as usize;
            if n == 1 {
                ok = false;
                return Ok(false);
            }
            covered += n;
        }
        if covered != used.len() {
            ok = false;
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(ok.then_some(SpanOrder {
        order,
        split,
        crossings,
        edge: e,
    }))
}
