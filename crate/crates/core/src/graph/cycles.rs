use std::collections::{HashSet, VecDeque};

use super::{ChargedGraph, EdgeVector, Gf2Basis};
use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleKind {
    /// connected, every vertex of degree exactly two
    Simple,
    /// any even-degree edge set
    General,
}

/// An even-degree edge set of a graph, as sorted edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleSubgraph {
    edges: Vec<usize>,
    kind: CycleKind,
}

impl CycleSubgraph {
    /// Validates that `edges` has all degrees even and classifies it.
    pub fn from_edges(g: &ChargedGraph, edges: &[usize]) -> Result<CycleSubgraph> {
        let mut es = edges.to_vec();
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Graph("repeated edge in cycle".into()));
        }
        if let Some(&e) = es.last() {
            if e >= g.m() {
                return Err(Error::IndexOutOfRange { index: e, n: g.m() });
            }
        }
        let mut deg = vec![0usize; g.n()];
        for &e in &es {
            let (a, b) = g.edge(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|d| d % 2 == 1) {
            return Err(Error::Graph("edge set has a vertex of odd degree".into()));
        }
        let simple = !es.is_empty() && deg.iter().all(|&d| d == 0 || d == 2) && connected(g, &es);
        Ok(CycleSubgraph {
            edges: es,
            kind: if simple { CycleKind::Simple } else { CycleKind::General },
        })
    }

    pub fn from_vector(g: &ChargedGraph, v: &EdgeVector) -> Result<CycleSubgraph> {
        if v.graph_id() != g.id() {
            return Err(Error::GraphMismatch);
        }
        CycleSubgraph::from_edges(g, &v.ones())
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn kind(&self) -> CycleKind {
        self.kind
    }

    pub fn is_simple(&self) -> bool {
        self.kind == CycleKind::Simple
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn to_vector(&self, g: &ChargedGraph) -> EdgeVector {
        EdgeVector::from_edges(g, &self.edges)
    }

    pub fn charge(&self, g: &ChargedGraph) -> Sign {
        self.edges.iter().map(|&e| g.charge(e)).product()
    }

    /// Sorted vertex set.
    pub fn vertices(&self, g: &ChargedGraph) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// For a simple cycle: its vertices in cyclic order, starting at the
    /// smallest vertex and continuing to its smaller cycle neighbour.
    pub fn vertex_order(&self, g: &ChargedGraph) -> Option<Vec<usize>> {
        if !self.is_simple() {
            return None;
        }
        let inc = |v: usize| -> Vec<usize> {
            g.neighbors(v)
                .iter()
                .filter(|(_, e)| self.edges.binary_search(e).is_ok())
                .map(|&(w, _)| w)
                .collect()
        };
        let start = self.vertices(g)[0];
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = inc(start)[0];
        while cur != start {
            order.push(cur);
            let next = inc(cur).into_iter().find(|&w| w != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Sort key: length first, then the edge-index list.
    pub fn sort_key(&self) -> (usize, &[usize]) {
        (self.edges.len(), &self.edges)
    }
}

fn connected(g: &ChargedGraph, es: &[usize]) -> bool {
    let Some(&first) = es.first() else { return true };
    let mut seen = vec![false; g.n()];
    let start = g.edge(first).0;
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    let mut count = 1;
    while let Some(u) = q.pop_front() {
        for &(w, e) in g.neighbors(u) {
            if !seen[w] && es.binary_search(&e).is_ok() {
                seen[w] = true;
                count += 1;
                q.push_back(w);
            }
        }
    }
    count == distinct_vertices(g, es)
}

fn distinct_vertices(g: &ChargedGraph, es: &[usize]) -> usize {
    let mut v: Vec<usize> = es.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Charge of an edge set: product of its edge charges (`+1` when empty).
pub fn charge_of(g: &ChargedGraph, h: &EdgeVector) -> Result<Sign> {
    if h.graph_id() != g.id() {
        return Err(Error::GraphMismatch);
    }
    Ok(h.ones().into_iter().map(|e| g.charge(e)).product())
}

/// The simple cycle through `order` (consecutive vertices adjacent, last
/// adjacent to first).
pub fn cycle_from_vertex_order(g: &ChargedGraph, order: &[usize]) -> Result<CycleSubgraph> {
    let k = order.len();
    if k < 3 {
        return Err(Error::Graph("a cycle needs at least three vertices".into()));
    }
    let mut es = Vec::with_capacity(k);
    for t in 0..k {
        let (a, b) = (order[t], order[(t + 1) % k]);
        es.push(
            g.edge_index(a, b)
                .ok_or_else(|| Error::Graph(format!("no edge {{{}, {}}}", a + 1, b + 1)))?,
        );
    }
    let c = CycleSubgraph::from_edges(g, &es)?;
    if !c.is_simple() {
        return Err(Error::Graph("vertex order repeats a vertex".into()));
    }
    Ok(c)
}

/// BFS spanning forest rooted at the smallest vertex of each component.
pub(crate) struct Forest {
    pub parent_edge: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub in_tree: Vec<bool>,
}

pub(crate) fn bfs_forest(g: &ChargedGraph) -> Forest {
    let n = g.n();
    let mut parent_edge = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut in_tree = vec![false; g.m()];
    for r in 0..n {
        if depth[r] != usize::MAX {
            continue;
        }
        depth[r] = 0;
        let mut q = VecDeque::from([r]);
        while let Some(u) = q.pop_front() {
            for &(w, e) in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent_edge[w] = Some(e);
                    in_tree[e] = true;
                    q.push_back(w);
                }
            }
        }
    }
    Forest {
        parent_edge,
        depth,
        in_tree,
    }
}

impl Forest {
    /// Edges of the tree path between `u` and `v` (same component).
    pub fn path(&self, g: &ChargedGraph, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while u != v {
            if self.depth[u] >= self.depth[v] {
                let e = self.parent_edge[u].expect("non-root");
                out.push(e);
                u = g.other(e, u);
            } else {
                let e = self.parent_edge[v].expect("non-root");
                out.push(e);
                v = g.other(e, v);
            }
        }
        out
    }

    /// Fundamental cycle of non-tree edge `e`.
    pub fn fundamental_cycle(&self, g: &ChargedGraph, e: usize) -> CycleSubgraph {
        let (a, b) = g.edge(e);
        let mut es = self.path(g, a, b);
        es.push(e);
        CycleSubgraph::from_edges(g, &es).expect("fundamental cycle is a cycle")
    }
}

/// Fundamental cycles of the BFS spanning forest, one per non-tree edge in
/// edge order; exactly `m - n + components` independent cycles.
pub fn cycle_space_basis(g: &ChargedGraph) -> Vec<CycleSubgraph> {
    let f = bfs_forest(g);
    (0..g.m()).filter(|&e| !f.in_tree[e]).map(|e| f.fundamental_cycle(g, e)).collect()
}

/// A negative simple cycle, if the graph has one: the first non-tree edge
/// (in edge order) whose fundamental cycle is negative.
pub fn find_negative_cycle(g: &ChargedGraph) -> Option<CycleSubgraph> {
    let f = bfs_forest(g);
    let mut pot = vec![Sign::Plus; g.n()];
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| f.depth[v]);
    for v in order {
        if let Some(e) = f.parent_edge[v] {
            pot[v] = pot[g.other(e, v)] * g.charge(e);
        }
    }
    (0..g.m())
        .filter(|&e| !f.in_tree[e])
        .find(|&e| {
            let (a, b) = g.edge(e);
            pot[a] * pot[b] != g.charge(e)
        })
        .map(|e| f.fundamental_cycle(g, e))
}

/// Minimum-length cycle basis from the Horton candidate set.
///
/// Candidates are `P(u,v) + P(u,w) + {v,w}` for every root `u` and edge
/// `{v,w}`, where the paths come from the BFS tree of `u` and meet only at
/// `u`. Duplicates are removed, the rest sorted by length then edge list,
/// and kept greedily while independent.
pub fn minimal_cycle_basis(g: &ChargedGraph) -> Vec<CycleSubgraph> {
    let nu = g.cyclomatic_number();
    if nu == 0 {
        return Vec::new();
    }
    let n = g.n();
    let mut cands: HashSet<Vec<usize>> = HashSet::new();
    let mut stamp = vec![0usize; n];
    let mut tag = 0usize;
    for u in 0..n {
        if g.degree(u) < 2 {
            continue;
        }
        let mut parent = vec![None; n];
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut q = VecDeque::from([u]);
        while let Some(x) = q.pop_front() {
            for &(w, e) in g.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    parent[w] = Some(e);
                    q.push_back(w);
                }
            }
        }
        for e in 0..g.m() {
            let (v, w) = g.edge(e);
            if dist[v] == usize::MAX || parent[v] == Some(e) || parent[w] == Some(e) {
                continue;
            }
            tag += 1;
            let mut es = vec![e];
            let mut x = v;
            stamp[x] = tag;
            while let Some(pe) = parent[x] {
                es.push(pe);
                x = g.other(pe, x);
                stamp[x] = tag;
            }
            // the w-path must reach u without touching the v-path
            let mut ok = true;
            let mut x = w;
            while let Some(pe) = parent[x] {
                if stamp[x] == tag {
                    ok = false;
                    break;
                }
                es.push(pe);
                x = g.other(pe, x);
            }
            if !ok {
                continue;
            }
            es.sort_unstable();
            cands.insert(es);
        }
    }
    let mut cands: Vec<Vec<usize>> = cands.into_iter().collect();
    cands.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut basis = Gf2Basis::new(g);
    let mut out = Vec::with_capacity(nu);
    for es in cands {
        let v = EdgeVector::from_edges(g, &es);
        if basis.insert(&v).is_some() {
            out.push(CycleSubgraph::from_edges(g, &es).expect("Horton candidate is a cycle"));
            if out.len() == nu {
                break;
            }
        }
    }
    debug_assert_eq!(out.len(), nu);
    out
}

/// Splits an even-degree edge set into edge-disjoint simple cycles.
pub fn simple_cycle_decomposition(g: &ChargedGraph, c: &CycleSubgraph) -> Vec<CycleSubgraph> {
    let mut remaining: Vec<bool> = vec![false; g.m()];
    for &e in c.edges() {
        remaining[e] = true;
    }
    let mut left = c.len();
    let mut out = Vec::new();
    let mut pos = vec![usize::MAX; g.n()];
    while left > 0 {
        let e0 = (0..g.m()).find(|&e| remaining[e]).unwrap();
        let (a, b) = g.edge(e0);
        let mut path = vec![a, b];
        let mut used = vec![e0];
        pos[a] = 0;
        pos[b] = 1;
        loop {
            let v = *path.last().unwrap();
            let &(w, e) = g
                .neighbors(v)
                .iter()
                .find(|&&(_, e)| remaining[e] && !used.contains(&e))
                .expect("even degree");
            if pos[w] != usize::MAX {
                let p = pos[w];
                let mut es: Vec<usize> = used[p..].to_vec();
                es.push(e);
                for &x in &es {
                    remaining[x] = false;
                }
                left -= es.len();
                out.push(CycleSubgraph::from_edges(g, &es).expect("closed walk segment"));
                break;
            }
            pos[w] = path.len();
            path.push(w);
            used.push(e);
        }
        for &v in &path {
            pos[v] = usize::MAX;
        }
    }
    out
}
