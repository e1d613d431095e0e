//! The set of matrices sharing all principal minors with a given generic
//! `K`: everything reachable by `K -> DKD` with `D` an involutory diagonal
//! matrix and by transposing `K` inside a single block of `G_K`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{blocks, BlockDecomposition};
use crate::graph::ChargedGraph;
use crate::minors::Matrix;
use crate::sign::Sign;
use crate::tol::Tolerances;

/// Entrywise tolerance of [`same_equivalence_class`].
pub const CLASS_TOL: f64 = 1e-9;
/// Largest block (in vertices) that [`rho`] enumerates.
pub const RHO_BLOCK_CAP: usize = 16;

/// An involutory diagonal matrix `D`, stored as its diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDiagonal {
    pub signs: Vec<Sign>,
}

impl SignDiagonal {
    pub fn identity(n: usize) -> SignDiagonal {
        SignDiagonal { signs: vec![Sign::Plus; n] }
    }

    /// From a vector of `+1` / `-1` integers.
    pub fn from_i64(v: &[i64]) -> Result<SignDiagonal> {
        v.iter()
            .map(|&x| Sign::from_i64(x).ok_or_else(|| Error::InvalidParameter(format!("diagonal entry {x} is not +-1"))))
            .collect::<Result<Vec<_>>>()
            .map(|signs| SignDiagonal { signs })
    }

    /// The `i`-th bit of `mask` set means `D_i = -1`.
    pub fn from_mask(n: usize, mask: u64) -> SignDiagonal {
        SignDiagonal {
            signs: (0..n).map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }
}

/// `DKD`, entry `(i, j)` being `D_i K_ij D_j`.
pub fn d_similarity(k: &Matrix, d: &SignDiagonal) -> Result<Matrix> {
    let n = k.n();
    if d.n() != n {
        return Err(Error::DimensionMismatch(d.n(), n));
    }
    let mut out = k.clone();
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = (d.signs[i] * d.signs[j]).to_f64() * k[(i, j)];
        }
    }
    Ok(out)
}

fn class_graph(k: &Matrix) -> ChargedGraph {
    k.sparsity_graph(Tolerances::default().zero)
}

fn transpose_in_place(k: &mut Matrix, vertices: &[usize]) {
    for (a, &i) in vertices.iter().enumerate() {
        for &j in &vertices[a + 1..] {
            let t = k[(i, j)];
            k[(i, j)] = k[(j, i)];
            k[(j, i)] = t;
        }
    }
}

/// Transposes `K` on the index set of one block of `G_K` and leaves every
/// other entry alone. `block_vertices` may be in any order.
pub fn block_transpose(k: &Matrix, block_vertices: &[usize]) -> Result<Matrix> {
    let mut vs = block_vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if let Some(&v) = vs.iter().find(|&&v| v >= k.n()) {
        return Err(Error::IndexOutOfRange { index: v, n: k.n() });
    }
    let d = blocks(&class_graph(k));
    if !d.blocks.iter().any(|b| b.vertices() == vs.as_slice()) {
        return Err(Error::Precondition(format!(
            "{{{}}} is not a block of the sparsity graph",
            crate::subset::key(&vs)
        )));
    }
    let mut out = k.clone();
    transpose_in_place(&mut out, &vs);
    Ok(out)
}

/// Signs `sgn K_ij` (`i < j`) over the edges of `g`, in edge order.
fn upper_signs(k: &Matrix, g: &ChargedGraph) -> Vec<Sign> {
    g.edges().iter().map(|&(i, j)| Sign::of(k[(i, j)])).collect()
}

/// `D` making `K_ij > 0` (for `i < j`) on every edge of the BFS forest of
/// `g` rooted at the lowest vertex of each component.
fn tree_gauge(k: &Matrix, g: &ChargedGraph) -> SignDiagonal {
    let n = g.n();
    let mut d: Vec<Option<Sign>> = vec![None; n];
    for r in 0..n {
        if d[r].is_some() {
            continue;
        }
        d[r] = Some(Sign::Plus);
        let mut q = VecDeque::from([r]);
        while let Some(u) = q.pop_front() {
            for &(w, _) in g.neighbors(u) {
                if d[w].is_none() {
                    let s = Sign::of(k[(u.min(w), u.max(w))]);
                    d[w] = Some(d[u].unwrap() * s);
                    q.push_back(w);
                }
            }
        }
    }
    SignDiagonal {
        signs: d.into_iter().map(|s| s.unwrap_or(Sign::Plus)).collect(),
    }
}

/// Representative of the class of `K`, equal (entrywise, exactly) for any
/// two members of one class.
///
/// Each block is transposed or not so that its upper-triangle sign pattern,
/// after gauging its BFS tree to `+1`, is the lexicographically larger of
/// the two (`+` before `-`). Then one global `D` gauges the BFS forest of
/// `G_K` to `+1`; a spanning forest meets each block in a spanning tree, so
/// the per-block choices survive.
pub fn canonical_form(k: &Matrix) -> Matrix {
    let g = class_graph(k);
    let d = blocks(&g);
    let mut out = k.clone();
    for b in d.nontrivial() {
        let h = b.graph();
        let vs = b.vertices();
        let local = Matrix::from_vec(
            vs.len(),
            vs.iter().flat_map(|&i| vs.iter().map(move |&j| (i, j))).map(|(i, j)| k[(i, j)]).collect(),
        )
        .expect("square");
        let mut flipped = local.clone();
        transpose_in_place(&mut flipped, &(0..vs.len()).collect::<Vec<_>>());
        let key = |m: &Matrix| {
            let gauged = d_similarity(m, &tree_gauge(m, h)).expect("dimensions match");
            upper_signs(&gauged, h).iter().map(|s| !s.is_plus()).collect::<Vec<bool>>()
        };
        if key(&flipped) < key(&local) {
            transpose_in_place(&mut out, vs);
        }
    }
    d_similarity(&out, &tree_gauge(&out, &g)).expect("dimensions match")
}

/// Result of comparing two matrices up to the equivalence.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassComparison {
    pub same: bool,
    /// Largest entrywise difference between canonical forms, when the graphs agree.
    pub max_diff: Option<f64>,
    /// Why the matrices differ, if they do.
    pub reason: Option<String>,
}

/// Compares `K` and `K2` by their canonical forms.
pub fn compare_classes(k: &Matrix, k2: &Matrix) -> Result<ClassComparison> {
    if k.n() != k2.n() {
        return Err(Error::DimensionMismatch(k.n(), k2.n()));
    }
    let (g, g2) = (class_graph(k), class_graph(k2));
    if g.edges() != g2.edges() || g.charges() != g2.charges() {
        return Ok(ClassComparison {
            same: false,
            max_diff: None,
            reason: Some("charged sparsity graphs differ".into()),
        });
    }
    let (c, c2) = (canonical_form(k), canonical_form(k2));
    let n = k.n();
    let mut worst = 0.0f64;
    let mut at = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let diff = (c[(i, j)] - c2[(i, j)]).abs();
            if diff > worst {
                worst = diff;
                at = (i, j);
            }
        }
    }
    let same = worst <= CLASS_TOL;
    Ok(ClassComparison {
        same,
        max_diff: Some(worst),
        reason: (!same).then(|| format!("canonical forms differ by {worst:e} at ({}, {})", at.0 + 1, at.1 + 1)),
    })
}

/// True iff `K2` is reachable from `K` by the class operations (up to
/// [`CLASS_TOL`] entrywise).
pub fn same_equivalence_class(k: &Matrix, k2: &Matrix) -> Result<bool> {
    compare_classes(k, k2).map(|c| c.same)
}

/// Cost of one block: min over `D_B` (mod sign) and the transpose flag of
/// the largest deviation on the block's edges.
fn block_min(k: &Matrix, k2: &Matrix, g: &ChargedGraph, d: &BlockDecomposition, b: usize) -> Result<f64> {
    let blk = &d.blocks[b];
    let vs = blk.vertices();
    if vs.len() > RHO_BLOCK_CAP {
        return Err(Error::CapExceeded(format!(
            "block with {} vertices exceeds the rho cap of {RHO_BLOCK_CAP}",
            vs.len()
        )));
    }
    let pairs: Vec<(usize, usize, usize, usize)> = blk
        .edges()
        .iter()
        .map(|&e| {
            let (i, j) = g.edge(e);
            let li = vs.binary_search(&i).unwrap();
            let lj = vs.binary_search(&j).unwrap();
            (i, j, li, lj)
        })
        .collect();
    let mut best = f64::INFINITY;
    // local vertex 0 is fixed to +1
    for mask in 0u64..1 << (vs.len() - 1) {
        let sign = |l: usize| if l > 0 && mask >> (l - 1) & 1 == 1 { -1.0 } else { 1.0 };
        for t in [false, true] {
            let mut worst = 0.0f64;
            for &(i, j, li, lj) in &pairs {
                let s = sign(li) * sign(lj);
                let (a, b) = if t { (k[(j, i)], k[(i, j)]) } else { (k[(i, j)], k[(j, i)]) };
                worst = worst.max((s * a - k2[(i, j)]).abs()).max((s * b - k2[(j, i)]).abs());
                if worst >= best {
                    break;
                }
            }
            best = best.min(worst);
        }
    }
    Ok(best)
}

/// `rho(K_ref, K2)`: the least max-entry distance from `K2` to a member of
/// the class of `K_ref`.
///
/// Diagonal entries and non-edges of `G_{K_ref}` are fixed by every class
/// operation. Each block's entries depend only on `D` restricted to it (up
/// to sign) and its own transpose flag, and blocks meet in a forest
/// pattern, so the minimum is taken independently per block.
pub fn rho(k_ref: &Matrix, k2: &Matrix) -> Result<f64> {
    let n = k_ref.n();
    if k2.n() != n {
        return Err(Error::DimensionMismatch(n, k2.n()));
    }
    let g = class_graph(k_ref);
    let mut fixed = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i == j || g.edge_index(i, j).is_none() {
                fixed = fixed.max((k_ref[(i, j)] - k2[(i, j)]).abs());
            }
        }
    }
    let d = blocks(&g);
    let mut out = fixed;
    for b in 0..d.blocks.len() {
        out = out.max(block_min(k_ref, k2, &g, &d, b)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Matrix {
        Matrix::from_rows(&[
            vec![0.1, 0.3, -0.4, 0.0, 0.0],
            vec![0.3, 0.2, 0.5, 0.0, 0.0],
            vec![0.4, 0.5, -0.1, 0.6, -0.3],
            vec![0.0, 0.0, 0.6, 0.3, 0.35],
            vec![0.0, 0.0, 0.3, 0.35, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn identity_gauge() {
        let k = bowtie();
        assert_eq!(d_similarity(&k, &SignDiagonal::identity(5)).unwrap(), k);
        let minus = SignDiagonal::from_i64(&[-1; 5]).unwrap();
        assert_eq!(d_similarity(&k, &minus).unwrap(), k);
        assert!(d_similarity(&k, &SignDiagonal::identity(4)).is_err());
    }

    #[test]
    fn transpose_requires_block() {
        let k = bowtie();
        assert!(block_transpose(&k, &[0, 1, 2]).is_ok());
        assert!(block_transpose(&k, &[0, 1, 3]).is_err());
        assert!(block_transpose(&k, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn canonical_is_class_invariant() {
        let k = bowtie();
        let c = canonical_form(&k);
        let k2 = block_transpose(&d_similarity(&k, &SignDiagonal::from_mask(5, 0b10110)).unwrap(), &[2, 3, 4]).unwrap();
        assert_eq!(canonical_form(&k2), c);
        assert!(same_equivalence_class(&k, &k.transpose()).unwrap());
        assert_eq!(rho(&k, &k2).unwrap(), 0.0);
    }
}
