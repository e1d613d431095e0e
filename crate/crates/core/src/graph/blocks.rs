use super::{ChargedGraph, Subgraph};

/// A maximal two-connected subgraph, or a single bridge edge (`trivial`).
#[derive(Clone, Debug)]
pub struct Block {
    pub sub: Subgraph,
    pub trivial: bool,
}

impl Block {
    /// The block as a graph on local vertices `0..vertices.len()`.
    pub fn graph(&self) -> &ChargedGraph {
        &self.sub.graph
    }

    /// Global vertex of each local vertex (ascending).
    pub fn vertices(&self) -> &[usize] {
        &self.sub.vertices
    }

    /// Global edge of each local edge (ascending).
    pub fn edges(&self) -> &[usize] {
        &self.sub.edges
    }
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    /// Ordered by smallest global edge index.
    pub blocks: Vec<Block>,
    pub articulation_points: Vec<usize>,
}

/// Block-cut decomposition by depth-first search. Isolated vertices belong
/// to no block.
pub fn blocks(g: &ChargedGraph) -> BlockDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next neighbor position)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = frames.last_mut() {
            let (v, pe) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let (w, e) = g.neighbors(v)[top.2];
                top.2 += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(parent) = frames.last() {
                let p = parent.0;
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    if p != root {
                        is_cut[p] = true;
                    }
                    let mut comp = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        comp.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    found.push(comp);
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    let mut blocks: Vec<Block> = found
        .into_iter()
        .map(|es| {
            let sub = g.edge_subgraph(&es);
            Block {
                trivial: sub.edges.len() == 1,
                sub,
            }
        })
        .collect();
    blocks.sort_by_key(|b| b.sub.edges[0]);
    BlockDecomposition {
        blocks,
        articulation_points: (0..n).filter(|&v| is_cut[v]).collect(),
    }
}

impl BlockDecomposition {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| !b.trivial)
    }
}

/// True when `g` is two-connected: at least three vertices, connected, and
/// without articulation points. Isolated vertices are not allowed.
pub(crate) fn is_two_connected(g: &ChargedGraph) -> bool {
    if g.n() < 3 {
        return false;
    }
    let d = blocks(g);
    d.blocks.len() == 1 && !d.blocks[0].trivial && d.blocks[0].sub.vertices.len() == g.n()
}
