use super::EdgeVector;

/// Incrementally built basis of a GF(2) subspace, kept in reduced echelon
/// form. Each row remembers which accepted vectors it is the sum of, so
/// targets in the span can be expressed in terms of the accepted vectors.
#[derive(Clone, Debug)]
pub struct Gf2Basis {
    graph_id: u64,
    len: usize,
    rows: Vec<Row>,
    accepted: Vec<EdgeVector>,
}

#[derive(Clone, Debug)]
struct Row {
    v: EdgeVector,
    pivot: usize,
    combo: Vec<u64>,
}

fn combo_toggle(c: &mut Vec<u64>, i: usize) {
    if c.len() <= i / 64 {
        c.resize(i / 64 + 1, 0);
    }
    c[i / 64] ^= 1 << (i % 64);
}

fn combo_add(a: &mut Vec<u64>, b: &[u64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

fn combo_ones(c: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in c.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(i * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

impl Gf2Basis {
    /// Empty basis for vectors of the given graph.
    pub fn new(g: &super::ChargedGraph) -> Gf2Basis {
        Gf2Basis::new_raw(g.id(), g.m())
    }

    pub(crate) fn new_raw(graph_id: u64, len: usize) -> Gf2Basis {
        Gf2Basis {
            graph_id,
            len,
            rows: Vec::new(),
            accepted: Vec::new(),
        }
    }

    /// Builds a basis from `vectors`, keeping the independent ones in order.
    pub fn from_vectors<'a>(g: &super::ChargedGraph, vectors: impl IntoIterator<Item = &'a EdgeVector>) -> Gf2Basis {
        let mut b = Gf2Basis::new(g);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Accepted vectors, in acceptance order.
    pub fn vectors(&self) -> &[EdgeVector] {
        &self.accepted
    }

    fn reduce(&self, v: &EdgeVector) -> (EdgeVector, Vec<u64>) {
        assert_eq!(v.graph_id(), self.graph_id, "edge vector from a different graph");
        let mut r = v.clone();
        let mut combo = Vec::new();
        for row in &self.rows {
            if r.get(row.pivot) {
                r.add_assign(&row.v);
                combo_add(&mut combo, &row.combo);
            }
        }
        (r, combo)
    }

    /// Adds `v` if it is independent of the current span; returns its
    /// acceptance index, or `None` when `v` was already in the span.
    pub fn insert(&mut self, v: &EdgeVector) -> Option<usize> {
        let (r, mut combo) = self.reduce(v);
        let pivot = r.lowest()?;
        let idx = self.accepted.len();
        combo_toggle(&mut combo, idx);
        for row in &mut self.rows {
            if row.v.get(pivot) {
                row.v.add_assign(&r);
                combo_add(&mut row.combo, &combo);
            }
        }
        self.rows.push(Row { v: r, pivot, combo });
        self.accepted.push(v.clone());
        Some(idx)
    }

    pub fn in_span(&self, v: &EdgeVector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// The unique set of accepted vectors summing to `target`, as sorted
    /// acceptance indices, or `None` when `target` is outside the span.
    pub fn express(&self, target: &EdgeVector) -> Option<Vec<usize>> {
        let (r, combo) = self.reduce(target);
        if r.is_zero() {
            Some(combo_ones(&combo))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }
}
