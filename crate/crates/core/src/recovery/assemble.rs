use std::collections::VecDeque;

use super::SignTable;
use crate::error::{Error, Result};
use crate::graph::{find_negative_cycle, Block, ChargedGraph, CycleSubgraph};
use crate::sign::Sign;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Entry signs `sgn K_ij` (`i < j`) for the edges of one block, as
/// `(global edge, sign)` pairs, realizing the signs in `table`.
///
/// A negative cycle (if any) minus its lowest negative edge `e` is
/// extended to a spanning tree; tree edges and `e` get `+1`, which fixes
/// `s = +1` on the negative cycle. Every other edge takes the sign of its
/// fundamental cycle, derived from `table`.
pub fn assemble_signs(g: &ChargedGraph, block: &Block, table: &SignTable) -> Result<Vec<(usize, Sign)>> {
    let h = block.graph();
    let lift = |c: &CycleSubgraph| CycleSubgraph::from_edges(g, &block.sub.lift_edges(c.edges()));
    let mut table = table.clone();
    let mut fixed = vec![false; h.m()];
    let mut tree = vec![false; h.m()];
    let mut parent: Vec<usize> = (0..h.n()).collect();
    if let Some(neg) = find_negative_cycle(h) {
        let e = *neg
            .edges()
            .iter()
            .find(|&&e| !h.charge(e).is_plus())
            .expect("negative cycle has a negative edge");
        fixed[e] = true;
        for &x in neg.edges() {
            if x != e {
                tree[x] = true;
                let (a, b) = h.edge(x);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        table.record(g, &lift(&neg)?, Sign::Plus);
    }
    for x in 0..h.m() {
        if tree[x] || fixed[x] {
            continue;
        }
        let (a, b) = h.edge(x);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            tree[x] = true;
        }
    }
    // parent edges of the tree, rooted at local vertex 0
    let mut up: Vec<Option<usize>> = vec![None; h.n()];
    let mut depth = vec![usize::MAX; h.n()];
    depth[0] = 0;
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &(w, e) in h.neighbors(u) {
            if tree[e] && depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                up[w] = Some(e);
                q.push_back(w);
            }
        }
    }
    let mut out = Vec::with_capacity(h.m());
    for x in 0..h.m() {
        let s = if tree[x] || fixed[x] {
            Sign::Plus
        } else {
            let (mut a, mut b) = h.edge(x);
            let mut es = vec![x];
            while a != b {
                if depth[a] >= depth[b] {
                    let e = up[a].expect("non-root");
                    es.push(e);
                    a = h.other(e, a);
                } else {
                    let e = up[b].expect("non-root");
                    es.push(e);
                    b = h.other(e, b);
                }
            }
            let c = lift(&CycleSubgraph::from_edges(h, &es)?)?;
            // tree signs are +1, so s(c) is the sign of the closing edge
            table
                .derive(g, &c)
                .ok_or_else(|| Error::Invariant("fundamental cycle outside the span of the sign table".into()))?
        };
        out.push((block.edges()[x], s));
    }
    Ok(out)
}
