//! Subsets of `[n]` as sorted index vectors, and their text keys.
//!
//! Internally indices are 0-based. Keys in files are sorted, comma-joined,
//! 1-based (`"1,3,4"`), with `""` for the empty set.

use crate::error::{Error, Result};

/// Sorts `s` and rejects duplicates or indices `>= n`.
pub fn normalize(s: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut v = s.to_vec();
    v.sort_unstable();
    for w in v.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidParameter(format!("repeated index {}", w[0] + 1)));
        }
    }
    if let Some(&last) = v.last() {
        if last >= n {
            return Err(Error::IndexOutOfRange { index: last, n });
        }
    }
    Ok(v)
}

/// The file key of a subset.
pub fn key(s: &[usize]) -> String {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Parses a file key into a sorted 0-based subset.
pub fn parse_key(k: &str) -> Result<Vec<usize>> {
    let k = k.trim();
    if k.is_empty() {
        return Ok(Vec::new());
    }
    let mut v = Vec::new();
    for part in k.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad subset key {k:?}")))?;
        if i == 0 {
            return Err(Error::Parse(format!("subset key {k:?} is not 1-based")));
        }
        v.push(i - 1);
    }
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("repeated index in key {k:?}")));
    }
    Ok(v)
}

/// The subset encoded by the bits of `mask`.
pub fn from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn to_mask(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |m, &i| m | 1 << i)
}

/// All `2^n` subsets of `[n]` in mask order. Requires `n < 64`.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 64, "all_subsets: n = {n} too large");
    (0u64..1 << n).map(from_mask)
}

/// `a` minus the elements of `b`; both sorted.
pub fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| !b.contains(x)).collect()
}
