//! Bases of the positive cycle space of a block.
//!
//! All functions work on a single block given as its own graph (local vertex
//! and edge indices, see [`crate::graph::Block::graph`]).

mod bounded;
mod chords;
mod ear_basis;
mod exact;
mod span_order;

pub use bounded::bounded_positive_basis;
pub use chords::{chord_violation, chords_of, enforce_chord_properties, ChordViolation};
pub use ear_basis::ear_positive_basis;
pub use exact::{exact_min_positive_basis, exact_min_positive_basis_with_cap, simple_cycle_sparsity, EXACT_EDGE_CAP};
pub use span_order::{span_edge_order, SpanOrder, PATH_CAP};

use crate::error::{Error, Result};
use crate::graph::{find_negative_cycle, ChargedGraph, CycleSubgraph, EdgeVector, Gf2Basis};

/// How a basis was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Ear,
    Bounded,
    Enforced,
    Exact,
}

/// Simple positive cycles whose incidence vectors form a basis of the
/// positive cycle space of one block.
#[derive(Clone, Debug)]
pub struct PositiveBasis {
    pub cycles: Vec<CycleSubgraph>,
    pub provenance: Provenance,
    pub graph_id: u64,
}

impl PositiveBasis {
    pub fn new(h: &ChargedGraph, cycles: Vec<CycleSubgraph>, provenance: Provenance) -> PositiveBasis {
        PositiveBasis {
            cycles,
            provenance,
            graph_id: h.id(),
        }
    }

    /// Checks simplicity, positivity, independence and cardinality.
    pub fn validate(&self, h: &ChargedGraph) -> Result<()> {
        if self.graph_id != h.id() {
            return Err(Error::GraphMismatch);
        }
        let mut span = Gf2Basis::new(h);
        for (t, c) in self.cycles.iter().enumerate() {
            if !c.is_simple() {
                return Err(Error::Invariant(format!("basis cycle {t} is not simple")));
            }
            if !c.charge(h).is_plus() {
                return Err(Error::Invariant(format!("basis cycle {t} is negative")));
            }
            if span.insert(&c.to_vector(h)).is_none() {
                return Err(Error::Invariant(format!("basis cycle {t} is dependent on earlier ones")));
            }
        }
        let dim = cplus_dimension(h);
        if self.cycles.len() != dim {
            return Err(Error::Invariant(format!("basis has {} cycles, dimension is {dim}", self.cycles.len())));
        }
        Ok(())
    }

    pub fn max_len(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.cycles.iter().map(|c| c.len()).sum()
    }
}

/// Dimension of the positive cycle space: `nu - 1` when some cycle is
/// negative, `nu` otherwise.
pub fn cplus_dimension(g: &ChargedGraph) -> usize {
    let nu = g.cyclomatic_number();
    if find_negative_cycle(g).is_some() {
        nu - 1
    } else {
        nu
    }
}

/// Span of all vectors except `skip`.
pub(crate) fn span_without(h: &ChargedGraph, vecs: &[EdgeVector], skip: usize) -> Gf2Basis {
    Gf2Basis::from_vectors(h, vecs.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v))
}
