use std::collections::HashMap;
use std::sync::Mutex;

use super::{principal_minor, Matrix};
use crate::error::{Error, Result};
use crate::subset;

/// Query statistics of an oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleStats {
    /// Number of distinct nonempty subsets queried.
    pub query_count: usize,
    /// Largest `|S|` queried.
    pub max_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleMode {
    Exact,
    Perturbed { delta: f64 },
    Table,
}

/// Access to principal minors `S -> Delta_S`.
///
/// Implementations memoize, so repeated queries return the same value and are
/// counted once. `query(&[])` is `1` and is not counted. Oracles are `Sync`
/// and may be queried from several threads.
pub trait MinorOracle: Sync {
    fn n(&self) -> usize;
    fn query(&self, s: &[usize]) -> Result<f64>;
    fn stats(&self) -> OracleStats;
    fn mode(&self) -> OracleMode;
}

impl<T: MinorOracle + ?Sized> MinorOracle for Box<T> {
    fn n(&self) -> usize {
        (**self).n()
    }

    fn query(&self, s: &[usize]) -> Result<f64> {
        (**self).query(s)
    }

    fn stats(&self) -> OracleStats {
        (**self).stats()
    }

    fn mode(&self) -> OracleMode {
        (**self).mode()
    }
}

/// Thread-safe memo table with query accounting, shared by the oracle types.
#[derive(Debug, Default)]
pub struct Memo {
    inner: Mutex<(HashMap<Vec<usize>, f64>, OracleStats)>,
}

impl Memo {
    pub fn new() -> Memo {
        Memo::default()
    }

    /// Returns the memoized value of sorted subset `s`, computing it with `f`
    /// on first use.
    pub fn get_or_compute(&self, s: Vec<usize>, f: impl FnOnce(&[usize]) -> Result<f64>) -> Result<f64> {
        if s.is_empty() {
            return Ok(1.0);
        }
        if let Some(&v) = self.inner.lock().unwrap().0.get(&s) {
            return Ok(v);
        }
        let v = f(&s)?;
        let mut guard = self.inner.lock().unwrap();
        let (map, stats) = &mut *guard;
        let len = s.len();
        let stored = *map.entry(s).or_insert_with(|| {
            stats.query_count += 1;
            stats.max_order = stats.max_order.max(len);
            v
        });
        Ok(stored)
    }

    pub fn stats(&self) -> OracleStats {
        self.inner.lock().unwrap().1
    }
}

/// Oracle backed by a matrix; answers are exact determinants.
#[derive(Debug)]
pub struct ExactOracle {
    k: Matrix,
    memo: Memo,
}

impl ExactOracle {
    pub fn new(k: Matrix) -> ExactOracle {
        ExactOracle { k, memo: Memo::new() }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.k
    }
}

impl MinorOracle for ExactOracle {
    fn n(&self) -> usize {
        self.k.n()
    }

    fn query(&self, s: &[usize]) -> Result<f64> {
        let s = subset::normalize(s, self.k.n())?;
        self.memo.get_or_compute(s, |s| principal_minor(&self.k, s))
    }

    fn stats(&self) -> OracleStats {
        self.memo.stats()
    }

    fn mode(&self) -> OracleMode {
        OracleMode::Exact
    }
}

/// Oracle backed by a precomputed table of minors; no matrix needed.
#[derive(Debug)]
pub struct TableOracle {
    n: usize,
    table: HashMap<Vec<usize>, f64>,
    memo: Memo,
}

impl TableOracle {
    /// `table` keys are sorted 0-based subsets.
    pub fn new(n: usize, table: HashMap<Vec<usize>, f64>) -> Result<TableOracle> {
        for s in table.keys() {
            if subset::normalize(s, n)? != *s {
                return Err(Error::InvalidParameter(format!(
                    "table key {{{}}} is not sorted",
                    subset::key(s)
                )));
            }
        }
        Ok(TableOracle {
            n,
            table,
            memo: Memo::new(),
        })
    }

    pub fn table(&self) -> &HashMap<Vec<usize>, f64> {
        &self.table
    }
}

impl MinorOracle for TableOracle {
    fn n(&self) -> usize {
        self.n
    }

    fn query(&self, s: &[usize]) -> Result<f64> {
        let s = subset::normalize(s, self.n)?;
        self.memo.get_or_compute(s, |s| {
            self.table
                .get(s)
                .copied()
                .ok_or_else(|| Error::MissingMinor(subset::key(s)))
        })
    }

    fn stats(&self) -> OracleStats {
        self.memo.stats()
    }

    fn mode(&self) -> OracleMode {
        OracleMode::Table
    }
}
