use crate::error::{Error, Result};

/// A minor table for one piece of a decomposition: maps a sorted subset of
/// the piece's vertices (global 0-based indices) to its minor.
pub type MinorFn<'a> = &'a dyn Fn(&[usize]) -> f64;

fn intersect(s: &[usize], v: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = s.iter().copied().filter(|x| v.contains(x)).collect();
    out.sort_unstable();
    out
}

fn check_disjoint(parts: &[(Vec<usize>, MinorFn)], n: usize) -> Result<Vec<bool>> {
    let mut seen = vec![false; n];
    for (v, _) in parts {
        for &x in v {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            if seen[x] {
                return Err(Error::MalformedPartition(format!("vertex {} in two parts", x + 1)));
            }
            seen[x] = true;
        }
    }
    Ok(seen)
}

/// `Delta_S` of a matrix whose graph has components `V_1, ..., V_k`:
/// the product of `Delta_{S ∩ V_j}`.
pub fn compose_disconnected(n: usize, parts: &[(Vec<usize>, MinorFn)], s: &[usize]) -> Result<f64> {
    let seen = check_disjoint(parts, n)?;
    if let Some(x) = seen.iter().position(|&b| !b) {
        return Err(Error::MalformedPartition(format!("vertex {} not covered", x + 1)));
    }
    let mut prod = 1.0;
    for (v, f) in parts {
        let t = intersect(s, v);
        if !t.is_empty() {
            prod *= f(&t);
        }
    }
    Ok(prod)
}

/// `Delta_S` of a matrix whose graph has cut vertex `i`, where
/// `V_1, ..., V_k` are the vertex sets of the components of the graph minus
/// `i`. The function of part `j` answers subsets of `{i} ∪ V_j`.
pub fn compose_cut_vertex(i: usize, parts: &[(Vec<usize>, MinorFn)], s: &[usize]) -> Result<f64> {
    if parts.is_empty() {
        return Err(Error::MalformedPartition("no components".into()));
    }
    let n = parts
        .iter()
        .flat_map(|(v, _)| v.iter().copied())
        .chain(std::iter::once(i))
        .max()
        .unwrap()
        + 1;
    let seen = check_disjoint(parts, n)?;
    if seen[i] {
        return Err(Error::MalformedPartition(format!("cut vertex {} inside a component", i + 1)));
    }
    if let Some(&x) = s.iter().find(|&&x| x != i && (x >= n || !seen[x])) {
        return Err(Error::MalformedPartition(format!("vertex {} of S not covered", x + 1)));
    }
    let has_i = s.contains(&i);
    let eval = |f: MinorFn, t: Vec<usize>| if t.is_empty() { 1.0 } else { f(&t) };
    let plain: Vec<f64> = parts.iter().map(|(v, f)| eval(*f, intersect(s, v))).collect();
    let mut total = 0.0;
    for (j1, (v, f)) in parts.iter().enumerate() {
        let mut with_i = intersect(s, v);
        if has_i {
            with_i.push(i);
            with_i.sort_unstable();
        }
        let mut term = eval(*f, with_i);
        for (j2, p) in plain.iter().enumerate() {
            if j2 != j1 {
                term *= p;
            }
        }
        total += term;
    }
    let d_i = if has_i { (parts[0].1)(&[i]) } else { 1.0 };
    let k = parts.len() as f64;
    total -= (k - 1.0) * d_i * plain.iter().product::<f64>();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_two() {
        let f1 = |_: &[usize]| 2.0;
        let f2 = |_: &[usize]| 3.0;
        let parts: Vec<(Vec<usize>, MinorFn)> = vec![(vec![0, 1], &f1), (vec![2], &f2)];
        assert_eq!(compose_disconnected(3, &parts, &[0, 2]).unwrap(), 6.0);
        assert_eq!(compose_disconnected(3, &parts, &[1]).unwrap(), 2.0);
        let bad: Vec<(Vec<usize>, MinorFn)> = vec![(vec![0, 1], &f1), (vec![1, 2], &f2)];
        assert!(compose_disconnected(3, &bad, &[0]).is_err());
    }

    #[test]
    fn single_component_reduces() {
        let f = |s: &[usize]| s.iter().map(|&x| x as f64 + 1.0).product::<f64>();
        let parts: Vec<(Vec<usize>, MinorFn)> = vec![(vec![1, 2], &f)];
        assert_eq!(compose_cut_vertex(0, &parts, &[0, 2]).unwrap(), f(&[0, 2]));
        assert!(compose_cut_vertex(1, &parts, &[0]).is_err());
    }
}
