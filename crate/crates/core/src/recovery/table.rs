use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{ChargedGraph, CycleSubgraph, Gf2Basis};
use crate::sign::Sign;

/// Known values of `s(C)`, the product of `sgn K_ij` over the `i < j`
/// entries of a cycle, with derivation of further values by GF(2)
/// combination.
#[derive(Clone, Debug)]
pub struct SignTable {
    span: Gf2Basis,
    /// sign of each accepted span vector, in acceptance order
    signs: Vec<Sign>,
    entries: HashMap<Vec<usize>, Sign>,
}

impl SignTable {
    pub fn new(g: &ChargedGraph) -> SignTable {
        SignTable {
            span: Gf2Basis::new(g),
            signs: Vec::new(),
            entries: HashMap::new(),
        }
    }

    /// Records `s(c)`. Cycles already in the span only enter the lookup map.
    pub fn record(&mut self, g: &ChargedGraph, c: &CycleSubgraph, s: Sign) {
        self.entries.insert(c.edges().to_vec(), s);
        if self.span.insert(&c.to_vector(g)).is_some() {
            self.signs.push(s);
        }
    }

    /// The stored value for exactly this cycle.
    pub fn get(&self, c: &CycleSubgraph) -> Option<Sign> {
        self.entries.get(c.edges()).copied()
    }

    /// `s(c)` if `c` is recorded or a sum of recorded cycles.
    pub fn derive(&self, g: &ChargedGraph, c: &CycleSubgraph) -> Option<Sign> {
        if let Some(s) = self.get(c) {
            return Some(s);
        }
        let rep = self.span.express(&c.to_vector(g))?;
        Some(rep.into_iter().map(|i| self.signs[i]).product())
    }

    pub(crate) fn require(&self, g: &ChargedGraph, c: &CycleSubgraph, what: &str) -> Result<Sign> {
        self.derive(g, c)
            .ok_or_else(|| Error::Invariant(format!("sign of {what} not derivable from the recorded cycles")))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
