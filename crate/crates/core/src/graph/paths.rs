use std::collections::VecDeque;

use super::{blocks, ChargedGraph, CycleSubgraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: usize,
    cap: i32,
    cost: i32,
    rev: usize,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Network {
        Network {
            arcs: vec![Vec::new(); nodes],
        }
    }

    /// Adds `u -> v` and its residual twin; returns the forward arc position.
    fn add(&mut self, u: usize, v: usize, cost: i32) -> (usize, usize) {
        let fu = self.arcs[u].len();
        let fv = self.arcs[v].len();
        self.arcs[u].push(Arc { to: v, cap: 1, cost, rev: fv });
        self.arcs[v].push(Arc { to: u, cap: 0, cost: -cost, rev: fu });
        (u, fu)
    }

    /// One unit along a cheapest residual path (Bellman-Ford queue variant,
    /// since residual arcs carry negative costs). Returns the path cost.
    fn augment(&mut self, s: usize, t: usize) -> Option<i32> {
        let nn = self.arcs.len();
        let mut dist = vec![i32::MAX; nn];
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nn];
        let mut queued = vec![false; nn];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        queued[s] = true;
        while let Some(u) = q.pop_front() {
            queued[u] = false;
            for (i, a) in self.arcs[u].iter().enumerate() {
                if a.cap > 0 && dist[u] + a.cost < dist[a.to] {
                    dist[a.to] = dist[u] + a.cost;
                    prev[a.to] = Some((u, i));
                    if !queued[a.to] {
                        queued[a.to] = true;
                        q.push_back(a.to);
                    }
                }
            }
        }
        if dist[t] == i32::MAX {
            return None;
        }
        let mut v = t;
        while let Some((u, i)) = prev[v] {
            let a = self.arcs[u][i];
            self.arcs[u][i].cap -= 1;
            self.arcs[v][a.rev].cap += 1;
            v = u;
        }
        Some(dist[t])
    }

    fn flow(&self, (u, i): (usize, usize)) -> i32 {
        let a = self.arcs[u][i];
        self.arcs[a.to][a.rev].cap
    }
}

/// A shortest simple cycle containing both edges `e` and `f`, or `None`
/// when no simple cycle contains both.
///
/// Both edges are subdivided by virtual midpoints; the cycle is a pair of
/// internally vertex-disjoint midpoint-to-midpoint paths of least total
/// length, found with two augmentations on a unit-capacity split-vertex
/// network.
pub fn shortest_cycle_through(g: &ChargedGraph, e: usize, f: usize) -> Result<Option<CycleSubgraph>> {
    for x in [e, f] {
        if x >= g.m() {
            return Err(Error::IndexOutOfRange { index: x, n: g.m() });
        }
    }
    if e == f {
        return Err(Error::Precondition("shortest_cycle_through needs two distinct edges".into()));
    }
    let n = g.n();
    let (vin, vout) = (|v: usize| 2 * v, |v: usize| 2 * v + 1);
    let (src, dst) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        net.add(vin(v), vout(v), 0);
    }
    let mut edge_arcs = Vec::with_capacity(g.m());
    for h in 0..g.m() {
        if h == e || h == f {
            edge_arcs.push(None);
            continue;
        }
        let (a, b) = g.edge(h);
        let fwd = net.add(vout(a), vin(b), 1);
        let bwd = net.add(vout(b), vin(a), 1);
        edge_arcs.push(Some((fwd, bwd)));
    }
    let (a, b) = g.edge(e);
    net.add(src, vin(a), 1);
    net.add(src, vin(b), 1);
    let (c, d) = g.edge(f);
    net.add(vout(c), dst, 1);
    net.add(vout(d), dst, 1);
    let Some(c1) = net.augment(src, dst) else { return Ok(None) };
    let Some(c2) = net.augment(src, dst) else { return Ok(None) };
    let mut es = vec![e, f];
    for (h, arcs) in edge_arcs.iter().enumerate() {
        if let Some((fwd, bwd)) = arcs {
            if net.flow(*fwd) != net.flow(*bwd) {
                es.push(h);
            }
        }
    }
    let cyc = CycleSubgraph::from_edges(g, &es)?;
    if !cyc.is_simple() || cyc.len() as i32 != c1 + c2 - 2 {
        return Err(Error::Invariant("disjoint-path flow did not yield a simple cycle".into()));
    }
    Ok(Some(cyc))
}

/// `phi` of a graph, with a pair of global edges attaining it when some
/// block has a cycle.
pub fn phi_with_witness(g: &ChargedGraph) -> Result<(usize, Option<(usize, usize)>)> {
    let mut best = (2, None);
    for b in blocks(g).nontrivial() {
        let h = b.graph();
        for e in 0..h.m() {
            for f in e + 1..h.m() {
                let len = shortest_cycle_through(h, e, f)?
                    .ok_or_else(|| Error::Invariant("edge pair of a block lies on no cycle".into()))?
                    .len();
                if len > best.0 {
                    best = (len, Some((b.edges()[e], b.edges()[f])));
                }
            }
        }
    }
    Ok(best)
}

/// Maximum over blocks, and over edge pairs within a block, of the length of
/// a shortest cycle through both edges; `2` when no block has a cycle.
pub fn phi(g: &ChargedGraph) -> Result<usize> {
    Ok(phi_with_witness(g)?.0)
}
