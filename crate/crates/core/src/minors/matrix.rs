use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::graph::ChargedGraph;
use crate::sign::Sign;

/// Dense row-major `n x n` real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Matrix> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(data.len(), n * n));
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Matrix> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch(r.len(), n));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn diagonal(d: &[f64]) -> Matrix {
        let mut m = Matrix::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Row-major copy of the principal submatrix on `s`.
    pub fn principal_submatrix(&self, s: &[usize]) -> Vec<f64> {
        let mut out = Vec::with_capacity(s.len() * s.len());
        for &i in s {
            for &j in s {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scaled(&self, c: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `|K_ij| = |K_ji|` for all `i != j`, up to `tol` relative to the larger.
    pub fn is_magnitude_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let (a, b) = (self[(i, j)].abs(), self[(j, i)].abs());
                if (a - b).abs() > tol * a.max(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// The charged sparsity graph: an edge wherever `|K_ij K_ji| >= zero`,
    /// charge `sgn(K_ij K_ji)`, magnitude `sqrt|K_ij K_ji|`.
    pub fn sparsity_graph(&self, zero: f64) -> ChargedGraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let p = self[(i, j)] * self[(j, i)];
                if p.abs() >= zero {
                    edges.push((i, j, Sign::of(p), p.abs().sqrt()));
                }
            }
        }
        ChargedGraph::new(self.n, edges).expect("sparsity graph is simple")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}
