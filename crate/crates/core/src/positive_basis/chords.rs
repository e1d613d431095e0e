use super::{span_without, PositiveBasis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{ChargedGraph, CycleSubgraph, EdgeVector};

/// A chord-property failure of a basis cycle, with chords given as
/// positions `(p, q)`, `p < q`, along [`CycleSubgraph::vertex_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordViolation {
    /// both cycles cut off by the chord are positive
    PositiveSplit((usize, usize)),
    /// two crossing chords that do not close a four-cycle with two cycle edges
    Crossing((usize, usize), (usize, usize)),
    /// three pairwise non-crossing chords, none between the other two
    Triangle([(usize, usize); 3]),
}

/// Chords of a simple cycle as position pairs along its vertex order.
pub fn chords_of(h: &ChargedGraph, c: &CycleSubgraph) -> Vec<(usize, usize)> {
    let Some(order) = c.vertex_order(h) else { return Vec::new() };
    let k = order.len();
    let mut out = Vec::new();
    for p in 0..k {
        for q in p + 2..k {
            if p == 0 && q == k - 1 {
                continue;
            }
            if h.has_edge(order[p], order[q]) {
                out.push((p, q));
            }
        }
    }
    out
}

struct Frame<'a> {
    h: &'a ChargedGraph,
    order: Vec<usize>,
}

impl Frame<'_> {
    fn k(&self) -> usize {
        self.order.len()
    }

    fn edge(&self, a: usize, b: usize) -> usize {
        self.h.edge_index(self.order[a], self.order[b]).expect("cycle or chord edge")
    }

    /// Chord plus the forward arc `p -> q` (`inner`) or `q -> p` (outer).
    fn split(&self, (p, q): (usize, usize), inner: bool) -> EdgeVector {
        let k = self.k();
        let (from, to) = if inner { (p, q) } else { (q, p + k) };
        let mut es = vec![self.edge(p, q)];
        for t in from..to {
            es.push(self.edge(t % k, (t + 1) % k));
        }
        EdgeVector::from_edges(self.h, &es)
    }

    fn cycle(&self, v: &EdgeVector) -> CycleSubgraph {
        CycleSubgraph::from_vector(self.h, v).expect("even edge set over the graph")
    }

    fn positive(&self, v: &EdgeVector) -> bool {
        v.ones().iter().map(|&e| self.h.charge(e)).product::<crate::sign::Sign>().is_plus()
    }
}

fn crossing(x: (usize, usize), y: (usize, usize)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

fn inside(y: (usize, usize), x: (usize, usize)) -> bool {
    x.0 <= y.0 && y.1 <= x.1
}

/// First violated chord property of a simple positive cycle, checked in
/// the order split, crossing, triangle.
pub fn chord_violation(h: &ChargedGraph, c: &CycleSubgraph) -> Option<ChordViolation> {
    violation_with_replacements(h, c).map(|(v, _)| v)
}

/// The violation together with the shorter positive cycles, one of which
/// can replace `c` in any basis containing it.
fn violation_with_replacements(h: &ChargedGraph, c: &CycleSubgraph) -> Option<(ChordViolation, Vec<CycleSubgraph>)> {
    let chords = chords_of(h, c);
    if chords.is_empty() {
        return None;
    }
    let f = Frame {
        h,
        order: c.vertex_order(h)?,
    };
    let k = f.k();
    for &x in &chords {
        let a = f.split(x, true);
        if f.positive(&a) {
            let b = f.split(x, false);
            return Some((ChordViolation::PositiveSplit(x), sorted(vec![f.cycle(&a), f.cycle(&b)])));
        }
    }
    for (i, &x) in chords.iter().enumerate() {
        for &y in &chords[i + 1..] {
            if !crossing(x, y) {
                continue;
            }
            let (x, y) = if x.0 < y.0 { (x, y) } else { (y, x) };
            let len1 = (y.0 - x.0) + (y.1 - x.1) + 2;
            let len2 = k + 4 - len1;
            if len1 == 4 || len2 == 4 {
                continue;
            }
            let sx = f.split(x, true);
            let c1 = sx.sum(&f.split(y, true)).expect("same graph");
            let c2 = sx.sum(&f.split(y, false)).expect("same graph");
            return Some((ChordViolation::Crossing(x, y), sorted(vec![f.cycle(&c1), f.cycle(&c2)])));
        }
    }
    let whole = c.to_vector(h);
    for (i, &x) in chords.iter().enumerate() {
        for (j, &y) in chords.iter().enumerate().skip(i + 1) {
            if crossing(x, y) {
                continue;
            }
            for &z in &chords[j + 1..] {
                if crossing(x, z) || crossing(y, z) {
                    continue;
                }
                let tri = [x, y, z];
                let separates = |t: usize| {
                    let (u, v) = (tri[(t + 1) % 3], tri[(t + 2) % 3]);
                    inside(u, tri[t]) != inside(v, tri[t])
                };
                if (0..3).any(separates) {
                    continue;
                }
                // cap of a chord: its split on the side away from the other two
                let cap = |t: usize| f.split(tri[t], !inside(tri[(t + 1) % 3], tri[t]));
                let caps: Vec<EdgeVector> = (0..3).map(cap).collect();
                let cands = (0..3)
                    .map(|t| {
                        let v = whole
                            .sum(&caps[(t + 1) % 3])
                            .and_then(|v| v.sum(&caps[(t + 2) % 3]))
                            .expect("same graph");
                        f.cycle(&v)
                    })
                    .collect();
                return Some((ChordViolation::Triangle(tri), sorted(cands)));
            }
        }
    }
    None
}

fn sorted(mut v: Vec<CycleSubgraph>) -> Vec<CycleSubgraph> {
    v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    v
}

/// Repeatedly replaces a violating basis cycle by a shorter positive cycle
/// outside the span of the others until every cycle satisfies the chord
/// properties. Cycle lengths never increase.
pub fn enforce_chord_properties(h: &ChargedGraph, basis: &PositiveBasis) -> Result<PositiveBasis> {
    if basis.graph_id != h.id() {
        return Err(Error::GraphMismatch);
    }
    let mut elems = basis.cycles.clone();
    loop {
        let mut changed = false;
        for t in 0..elems.len() {
            while let Some((v, cands)) = violation_with_replacements(h, &elems[t]) {
                let vecs: Vec<EdgeVector> = elems.iter().map(|c| c.to_vector(h)).collect();
                let rest = span_without(h, &vecs, t);
                let next = cands
                    .into_iter()
                    .find(|c| c.is_simple() && c.len() < elems[t].len() && !rest.in_span(&c.to_vector(h)))
                    .ok_or_else(|| Error::Invariant(format!("no replacement for chord violation {v:?}")))?;
                elems[t] = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(PositiveBasis::new(h, elems, Provenance::Enforced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_from_vertex_order;
    use crate::sign::Sign;

    #[test]
    fn positive_split_detected() {
        // 6-cycle 0..5 with chord {0,3}; all charges +1
        let mut es: Vec<(usize, usize, Sign, f64)> = (0..6).map(|i| (i, (i + 1) % 6, Sign::Plus, 1.0)).collect();
        es.push((0, 3, Sign::Plus, 1.0));
        let h = ChargedGraph::new(6, es).unwrap();
        let c = cycle_from_vertex_order(&h, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(chords_of(&h, &c), vec![(0, 3)]);
        assert_eq!(chord_violation(&h, &c), Some(ChordViolation::PositiveSplit((0, 3))));
    }
}
