//! Charged graphs and their cycle spaces over GF(2).

mod blocks;
pub(crate) mod cycles;
mod ear;
mod edge_vector;
pub(crate) mod enumerate;
mod gf2;
pub(crate) mod low_order;
mod paths;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

pub use blocks::{blocks, Block, BlockDecomposition};
pub(crate) use blocks::is_two_connected;
pub use cycles::{
    charge_of, cycle_from_vertex_order, cycle_space_basis, find_negative_cycle, minimal_cycle_basis,
    simple_cycle_decomposition, CycleKind, CycleSubgraph,
};
pub use ear::{ear_decomposition, Ear, EarDecomposition};
pub use edge_vector::EdgeVector;
pub use enumerate::{simple_cycles, simple_cycles_through};
pub use gf2::Gf2Basis;
pub use low_order::graph_from_low_order_minors;
pub use paths::{phi, phi_with_witness, shortest_cycle_through};

use crate::error::{Error, Result};
use crate::sign::Sign;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const NO_EDGE: usize = usize::MAX;

/// A simple undirected graph on `0..n` with a charge and a magnitude per
/// edge. Edges are stored as `(i, j)` with `i < j`; their order fixes the
/// coordinates of every [`EdgeVector`] over the graph.
#[derive(Clone, Debug)]
pub struct ChargedGraph {
    id: u64,
    n: usize,
    edges: Vec<(usize, usize)>,
    charges: Vec<Sign>,
    magnitudes: Vec<f64>,
    index: Vec<usize>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for ChargedGraph {
    /// Structural equality; ignores the identity tag.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.charges == other.charges && self.magnitudes == other.magnitudes
    }
}

/// A subgraph with maps from its local vertex/edge indices to the parent's.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: ChargedGraph,
    /// local vertex -> parent vertex
    pub vertices: Vec<usize>,
    /// local edge -> parent edge
    pub edges: Vec<usize>,
}

impl ChargedGraph {
    /// Builds a graph from `(i, j, charge, magnitude)` tuples. The pair order
    /// within a tuple is free; the tuple order becomes the edge order.
    pub fn new(n: usize, edges: Vec<(usize, usize, Sign, f64)>) -> Result<ChargedGraph> {
        let mut index = vec![NO_EDGE; n * n];
        let mut adj = vec![Vec::new(); n];
        let mut es = Vec::with_capacity(edges.len());
        let mut charges = Vec::with_capacity(edges.len());
        let mut mags = Vec::with_capacity(edges.len());
        for (e, (a, b, c, w)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::Graph(format!("loop at vertex {}", a + 1)));
            }
            if !(w >= 0.0) {
                return Err(Error::Graph(format!("edge {{{}, {}}} has invalid magnitude {w}", a + 1, b + 1)));
            }
            let (i, j) = (a.min(b), a.max(b));
            if index[i * n + j] != NO_EDGE {
                return Err(Error::Graph(format!("duplicate edge {{{}, {}}}", i + 1, j + 1)));
            }
            index[i * n + j] = e;
            index[j * n + i] = e;
            adj[i].push((j, e));
            adj[j].push((i, e));
            es.push((i, j));
            charges.push(c);
            mags.push(w);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(ChargedGraph {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            n,
            edges: es,
            charges,
            magnitudes: mags,
            index,
            adj,
        })
    }

    /// All charges `+1`, magnitudes unset.
    pub fn uncharged(n: usize, pairs: &[(usize, usize)]) -> Result<ChargedGraph> {
        ChargedGraph::new(n, pairs.iter().map(|&(a, b)| (a, b, Sign::Plus, 0.0)).collect())
    }

    /// Same edges with new charges (a new graph identity).
    pub fn with_charges(&self, charges: &[Sign]) -> Result<ChargedGraph> {
        if charges.len() != self.m() {
            return Err(Error::DimensionMismatch(charges.len(), self.m()));
        }
        ChargedGraph::new(
            self.n,
            self.edges
                .iter()
                .zip(charges)
                .zip(&self.magnitudes)
                .map(|((&(i, j), &c), &w)| (i, j, c, w))
                .collect(),
        )
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn charge(&self, e: usize) -> Sign {
        self.charges[e]
    }

    pub fn charges(&self) -> &[Sign] {
        &self.charges
    }

    pub fn magnitude(&self, e: usize) -> f64 {
        self.magnitudes[e]
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n {
            return None;
        }
        match self.index[i * self.n + j] {
            NO_EDGE => None,
            e => Some(e),
        }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }

    /// `(neighbor, edge)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edge endpoint other than `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut verts = vec![s];
            comp[s] = c;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &(v, _) in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        verts.push(v);
                        q.push_back(v);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    /// Cycle-space dimension `m - n + (number of components)`.
    pub fn cyclomatic_number(&self) -> usize {
        self.m() + self.components().len() - self.n
    }

    /// The subgraph formed by `edges` (parent indices) and their endpoints.
    /// Local vertices and edges keep the parent's relative order.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Subgraph {
        let mut es = edges.to_vec();
        es.sort_unstable();
        es.dedup();
        let mut verts: Vec<usize> = es.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
        verts.sort_unstable();
        verts.dedup();
        self.build_subgraph(verts, es)
    }

    /// The subgraph induced on `vertices`.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut verts = vertices.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut es = Vec::new();
        for (a, &u) in verts.iter().enumerate() {
            for &v in &verts[a + 1..] {
                if let Some(e) = self.edge_index(u, v) {
                    es.push(e);
                }
            }
        }
        es.sort_unstable();
        self.build_subgraph(verts, es)
    }

    fn build_subgraph(&self, verts: Vec<usize>, es: Vec<usize>) -> Subgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let graph = ChargedGraph::new(
            verts.len(),
            es.iter()
                .map(|&e| {
                    let (a, b) = self.edges[e];
                    (local[a], local[b], self.charges[e], self.magnitudes[e])
                })
                .collect(),
        )
        .expect("subgraph of a simple graph is simple");
        Subgraph {
            graph,
            vertices: verts,
            edges: es,
        }
    }
}

impl Subgraph {
    /// Parent edge indices of a cycle given in local indices.
    pub fn lift_edges(&self, local: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = local.iter().map(|&e| self.edges[e]).collect();
        v.sort_unstable();
        v
    }
}
