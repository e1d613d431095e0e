use super::{principal_minor, Matrix};
use crate::error::{Error, Result};
use crate::subset;

/// The first subset on which two matrices' minors disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorMismatch {
    /// sorted, 0-based
    pub subset: Vec<usize>,
    pub a: f64,
    pub b: f64,
}

/// Outcome of [`compare_minors`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinorComparison {
    pub checked: usize,
    pub mismatch: Option<MinorMismatch>,
}

/// Compares `Delta_S(a)` and `Delta_S(b)` for every nonempty `S` with
/// `|S| <= max_order`, by increasing size and then lexicographically.
/// Two values agree when `|x - y| <= rtol max(|x|, |y|) + atol`.
pub fn compare_minors(a: &Matrix, b: &Matrix, max_order: usize, rtol: f64, atol: f64) -> Result<MinorComparison> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let mut subsets: Vec<Vec<usize>> = subset::all_subsets(a.n()).filter(|s| !s.is_empty() && s.len() <= max_order).collect();
    subsets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    for (t, s) in subsets.iter().enumerate() {
        let (x, y) = (principal_minor(a, s)?, principal_minor(b, s)?);
        if !((x - y).abs() <= rtol * x.abs().max(y.abs()) + atol) {
            return Ok(MinorComparison {
                checked: t + 1,
                mismatch: Some(MinorMismatch { subset: s.clone(), a: x, b: y }),
            });
        }
    }
    Ok(MinorComparison {
        checked: subsets.len(),
        mismatch: None,
    })
}
