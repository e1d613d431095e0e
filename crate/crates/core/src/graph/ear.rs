use std::collections::VecDeque;

use super::blocks::is_two_connected;
use super::cycles::bfs_forest;
use super::{ChargedGraph, CycleSubgraph};
use crate::error::{Error, Result};

/// A path whose two distinct endpoints lie in the graph built so far and
/// whose internal vertices are new.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    /// vertices in path order, endpoints included
    pub vertices: Vec<usize>,
    /// edges in path order
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct EarDecomposition {
    pub initial: CycleSubgraph,
    pub ears: Vec<Ear>,
}

/// Proper ear decomposition of a two-connected graph.
///
/// Starts from `preferred` when given (it must be a simple cycle of `h`),
/// otherwise from the fundamental cycle of the first non-tree edge of the
/// BFS forest. Each step takes the lowest unused edge with an endpoint
/// already built and extends it by a BFS path through new vertices.
pub fn ear_decomposition(h: &ChargedGraph, preferred: Option<&CycleSubgraph>) -> Result<EarDecomposition> {
    if !is_two_connected(h) {
        return Err(Error::NotTwoConnected);
    }
    let initial = match preferred {
        Some(c) => {
            if !c.is_simple() || c.edges().last().is_some_and(|&e| e >= h.m()) {
                return Err(Error::Precondition("initial cycle must be a simple cycle of the graph".into()));
            }
            c.clone()
        }
        None => {
            let f = bfs_forest(h);
            let e = (0..h.m()).find(|&e| !f.in_tree[e]).expect("two-connected graph has a cycle");
            f.fundamental_cycle(h, e)
        }
    };
    let mut built = vec![false; h.n()];
    let mut used = vec![false; h.m()];
    for &e in initial.edges() {
        used[e] = true;
        let (a, b) = h.edge(e);
        built[a] = true;
        built[b] = true;
    }
    let mut ears = Vec::new();
    while let Some(e) = (0..h.m()).find(|&e| {
        let (a, b) = h.edge(e);
        !used[e] && (built[a] || built[b])
    }) {
        let (a, b) = h.edge(e);
        let (u, v) = if built[a] { (a, b) } else { (b, a) };
        let ear = if built[v] {
            Ear {
                vertices: vec![u, v],
                edges: vec![e],
            }
        } else {
            let (tail_v, tail_e) = path_to_built(h, v, u, &built)
                .ok_or_else(|| Error::Invariant("no ear found in a two-connected graph".into()))?;
            let mut vertices = vec![u];
            vertices.extend(tail_v);
            let mut edges = vec![e];
            edges.extend(tail_e);
            Ear { vertices, edges }
        };
        for &x in &ear.edges {
            used[x] = true;
        }
        for &x in &ear.vertices {
            built[x] = true;
        }
        ears.push(ear);
    }
    debug_assert!(used.iter().all(|&x| x));
    Ok(EarDecomposition { initial, ears })
}

/// BFS from the unbuilt vertex `v` through unbuilt vertices to a built
/// vertex other than `avoid`. Returns the vertex path from `v` and its edges.
fn path_to_built(h: &ChargedGraph, v: usize, avoid: usize, built: &[bool]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; h.n()];
    let mut seen = vec![false; h.n()];
    seen[v] = true;
    let mut q = VecDeque::from([v]);
    while let Some(x) = q.pop_front() {
        for &(y, e) in h.neighbors(x) {
            if seen[y] || y == avoid {
                continue;
            }
            seen[y] = true;
            prev[y] = Some((x, e));
            if built[y] {
                let mut verts = vec![y];
                let mut edges = Vec::new();
                let mut z = y;
                while let Some((p, pe)) = prev[z] {
                    verts.push(p);
                    edges.push(pe);
                    z = p;
                }
                verts.reverse();
                edges.reverse();
                return Some((verts, edges));
            }
            q.push_back(y);
        }
    }
    None
}

impl EarDecomposition {
    /// All edges, in the order they are added.
    pub fn edge_order(&self) -> Vec<usize> {
        let mut out = self.initial.edges().to_vec();
        for ear in &self.ears {
            out.extend(&ear.edges);
        }
        out
    }
}
