//! Exact recovery of a matrix from its principal minors.
//!
//! [`recover`] reads the minors of order one and two to get the charged
//! sparsity graph, builds a chord-regular positive cycle basis per block,
//! extracts `s(C)` for each basis cycle from `O(1)` further minors on `V(C)`
//! (shortest cycles first), and fixes entry signs along a spanning tree.

mod adversarial;
mod assemble;
mod signs;
mod table;

pub use adversarial::{adversarial_charges, flip_construction, matrix_cycle_sign};
pub use assemble::assemble_signs;
pub use signs::{
    four_cycle_z, orientation_factor, sign_four_cycles, sign_long_cycle, sign_three_cycle, three_cycle_product, z_value,
    SignContext, ZeroPolicy,
};
pub use table::SignTable;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::low_order::graph_with_threshold;
use crate::graph::{blocks, phi, Block, ChargedGraph, CycleSubgraph};
use crate::minors::{Matrix, MinorOracle};
use crate::positive_basis::{bounded_positive_basis, enforce_chord_properties, span_edge_order, PATH_CAP};
use crate::sign::Sign;
use crate::tol::Tolerances;

#[derive(Clone, Debug)]
pub struct RecoverOptions {
    pub tol: Tolerances,
    /// worker threads for per-block recovery; `0` uses all cores
    pub jobs: usize,
}

impl Default for RecoverOptions {
    fn default() -> Self {
        RecoverOptions {
            tol: Tolerances::default(),
            jobs: 1,
        }
    }
}

/// Per-block diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct BlockLog {
    /// global vertices, 0-based
    pub vertices: Vec<usize>,
    pub edges: usize,
    /// lengths of the basis cycles, in processing order
    pub cycle_lengths: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RecoveryResult {
    pub matrix: Matrix,
    /// distinct nonempty subsets queried
    pub queries: usize,
    /// largest subset queried
    pub max_order: usize,
    pub phi: usize,
    /// number of non-trivial blocks
    pub blocks: usize,
    pub per_block_log: Vec<BlockLog>,
    pub warnings: Vec<String>,
    pub graph: ChargedGraph,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Mode {
    Exact,
    Noisy { delta: f64, policy: ZeroPolicy },
}

/// Recovers a matrix with the same principal minors as the one behind
/// `oracle`, with default options.
pub fn recover(oracle: &dyn MinorOracle) -> Result<RecoveryResult> {
    recover_with(oracle, &RecoverOptions::default())
}

pub fn recover_with(oracle: &dyn MinorOracle, opts: &RecoverOptions) -> Result<RecoveryResult> {
    run(oracle, opts, Mode::Exact)
}

struct BlockOutcome {
    signs: Vec<(usize, Sign)>,
    log: BlockLog,
    warnings: Vec<String>,
}

pub(crate) fn run(oracle: &dyn MinorOracle, opts: &RecoverOptions, mode: Mode) -> Result<RecoveryResult> {
    let floor = match mode {
        Mode::Exact => 0.0,
        Mode::Noisy { delta, .. } => 3.0 * delta,
    };
    let (g, diag) = graph_with_threshold(oracle, opts.tol.zero, floor)?;
    let dec = blocks(&g);
    let nontrivial: Vec<&Block> = dec.nontrivial().collect();
    let work = |b: &&Block| recover_block(oracle, &g, b, opts.tol, mode);
    let outcomes: Vec<Result<BlockOutcome>> = if opts.jobs == 1 {
        nontrivial.iter().map(work).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(|| nontrivial.par_iter().map(work).collect())
    };
    let mut signs = vec![Sign::Plus; g.m()];
    let mut logs = Vec::new();
    let mut warnings = Vec::new();
    for o in outcomes {
        let o = o?;
        for (e, s) in o.signs {
            signs[e] = s;
        }
        logs.push(o.log);
        warnings.extend(o.warnings);
    }
    let matrix = build_matrix(&g, &diag, &signs);
    let stats = oracle.stats();
    Ok(RecoveryResult {
        matrix,
        queries: stats.query_count,
        max_order: stats.max_order,
        phi: phi(&g)?,
        blocks: nontrivial.len(),
        per_block_log: logs,
        warnings,
        graph: g,
    })
}

/// `K_ii = diag_i`, `K_ij = s_e |K_ij|` for `i < j`, `K_ji = eps_e K_ij`.
pub(crate) fn build_matrix(g: &ChargedGraph, diag: &[f64], signs: &[Sign]) -> Matrix {
    let mut k = Matrix::diagonal(diag);
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        let v = signs[e].to_f64() * g.magnitude(e);
        k[(i, j)] = v;
        k[(j, i)] = g.charge(e).to_f64() * v;
    }
    k
}

fn recover_block(oracle: &dyn MinorOracle, g: &ChargedGraph, block: &Block, tol: Tolerances, mode: Mode) -> Result<BlockOutcome> {
    let h = block.graph();
    let basis = enforce_chord_properties(h, &bounded_positive_basis(h)?)?;
    let mut cycles = basis.cycles.clone();
    cycles.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let mut ctx = SignContext {
        oracle,
        graph: g,
        tol,
        lenient: match mode {
            Mode::Exact => None,
            Mode::Noisy { policy, .. } => Some(policy),
        },
        warnings: Vec::new(),
    };
    let mut table = SignTable::new(g);
    let to_global = |v: usize| block.vertices()[v];
    for c in &cycles {
        let gc = CycleSubgraph::from_edges(g, &block.sub.lift_edges(c.edges()))?;
        if table.get(&gc).is_some() {
            continue;
        }
        let verts: Vec<usize> = gc.vertices(g);
        let s = match gc.len() {
            3 => sign_three_cycle(&mut ctx, verts[0], verts[1], verts[2])?,
            4 => {
                let found = sign_four_cycles(&mut ctx, [verts[0], verts[1], verts[2], verts[3]])?;
                let mut own = None;
                for (x, s) in found {
                    if x == gc {
                        own = Some(s);
                    } else if table.get(&x).is_none() {
                        table.record(g, &x, s);
                    }
                }
                own.ok_or_else(|| Error::Invariant("basis four-cycle missing from its vertex set".into()))?
            }
            _ => {
                let so = span_edge_order(h, c, PATH_CAP)?;
                let order: Vec<usize> = so.order.iter().map(|&v| to_global(v)).collect();
                let z = z_value(&mut ctx, &order, &table)?;
                sign_long_cycle(&mut ctx, z, &order, &so.crossings, &table)?
            }
        };
        table.record(g, &gc, s);
    }
    let signs = assemble_signs(g, block, &table)?;
    Ok(BlockOutcome {
        signs,
        log: BlockLog {
            vertices: block.vertices().to_vec(),
            edges: h.m(),
            cycle_lengths: cycles.iter().map(|c| c.len()).collect(),
        },
        warnings: ctx.warnings,
    })
}
