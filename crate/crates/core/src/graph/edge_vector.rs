use super::ChargedGraph;
use crate::error::{Error, Result};

/// GF(2) incidence vector over the edges of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeVector {
    graph_id: u64,
    len: usize,
    words: Vec<u64>,
}

impl EdgeVector {
    pub fn zeros(g: &ChargedGraph) -> EdgeVector {
        EdgeVector::zeros_raw(g.id(), g.m())
    }

    pub(crate) fn zeros_raw(graph_id: u64, len: usize) -> EdgeVector {
        EdgeVector {
            graph_id,
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_edges(g: &ChargedGraph, edges: &[usize]) -> EdgeVector {
        let mut v = EdgeVector::zeros(g);
        for &e in edges {
            v.toggle(e);
        }
        v
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, e: usize) -> bool {
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn set(&mut self, e: usize, on: bool) {
        assert!(e < self.len, "edge {e} out of range");
        if on {
            self.words[e / 64] |= 1 << (e % 64);
        } else {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn toggle(&mut self, e: usize) {
        assert!(e < self.len, "edge {e} out of range");
        self.words[e / 64] ^= 1 << (e % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set coordinates, ascending.
    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count_ones());
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// In-place sum. Panics on vectors from different graphs.
    pub fn add_assign(&mut self, other: &EdgeVector) {
        assert_eq!(self.graph_id, other.graph_id, "edge vectors from different graphs");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// GF(2) sum, i.e. symmetric difference of edge sets.
    pub fn sum(&self, other: &EdgeVector) -> Result<EdgeVector> {
        if self.graph_id != other.graph_id {
            return Err(Error::GraphMismatch);
        }
        let mut v = self.clone();
        v.add_assign(other);
        Ok(v)
    }
}
