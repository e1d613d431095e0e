use super::{PositiveBasis, Provenance};
use crate::error::{Error, Result};
use crate::graph::{cycle_from_vertex_order, ear_decomposition, find_negative_cycle, is_two_connected, minimal_cycle_basis, ChargedGraph};
use crate::sign::Sign;

/// One path of each charge between every pair of built vertices.
struct PathTable {
    n: usize,
    slots: Vec<[Option<Vec<usize>>; 2]>,
}

fn slot(c: Sign) -> usize {
    match c {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

fn path_charge(h: &ChargedGraph, p: &[usize]) -> Sign {
    p.windows(2)
        .map(|w| h.charge(h.edge_index(w[0], w[1]).expect("path edge")))
        .product()
}

impl PathTable {
    fn get(&self, u: usize, v: usize, c: Sign) -> &[usize] {
        let (a, b) = (u.min(v), u.max(v));
        self.slots[a * self.n + b][slot(c)].as_deref().expect("path present for built pair")
    }

    /// Path from `u` to `v` of charge `c`, oriented from `u`.
    fn oriented(&self, u: usize, v: usize, c: Sign) -> Vec<usize> {
        let mut p = self.get(u, v, c).to_vec();
        if p[0] != u {
            p.reverse();
        }
        p
    }

    fn put(&mut self, h: &ChargedGraph, mut p: Vec<usize>) {
        let (u, v) = (p[0], *p.last().unwrap());
        if u > v {
            p.reverse();
        }
        let c = path_charge(h, &p);
        let (a, b) = (u.min(v), u.max(v));
        self.slots[a * self.n + b][slot(c)] = Some(p);
    }
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    debug_assert_eq!(a.last(), b.first());
    let mut out = a.to_vec();
    out.extend_from_slice(&b[1..]);
    out
}

/// Positive basis from an ear decomposition started at a negative cycle:
/// each ear is closed by a built path of the ear's own charge.
///
/// Falls back to the minimal cycle basis when no cycle is negative.
pub fn ear_positive_basis(h: &ChargedGraph) -> Result<PositiveBasis> {
    if !is_two_connected(h) {
        return Err(Error::NotTwoConnected);
    }
    let Some(neg) = find_negative_cycle(h) else {
        return Ok(PositiveBasis::new(h, minimal_cycle_basis(h), Provenance::Ear));
    };
    let dec = ear_decomposition(h, Some(&neg))?;
    let n = h.n();
    let mut table = PathTable {
        n,
        slots: vec![[None, None]; n * n],
    };
    let order = neg.vertex_order(h).expect("simple cycle");
    let k = order.len();
    for i in 0..k {
        for j in i + 1..k {
            table.put(h, order[i..=j].to_vec());
            let mut other: Vec<usize> = order[..=i].iter().rev().copied().collect();
            other.extend(order[j..].iter().rev());
            table.put(h, other);
        }
    }
    let mut is_built = vec![false; n];
    for &v in &order {
        is_built[v] = true;
    }
    let mut cycles = Vec::with_capacity(dec.ears.len());
    for ear in &dec.ears {
        let p = &ear.vertices;
        let r = p.len() - 1;
        let (x, y) = (p[0], p[r]);
        let eps = path_charge(h, p);
        let back = table.oriented(y, x, eps);
        let mut verts = p.clone();
        verts.extend_from_slice(&back[1..back.len() - 1]);
        cycles.push(cycle_from_vertex_order(h, &verts)?);

        let built: Vec<usize> = (0..n).filter(|&v| is_built[v]).collect();
        for s in 1..r {
            let to_x: Vec<usize> = p[..=s].iter().rev().copied().collect();
            let to_y: Vec<usize> = p[s..].to_vec();
            for &v in &built {
                if v != x {
                    for c in [Sign::Plus, Sign::Minus] {
                        table.put(h, concat(&to_x, &table.oriented(x, v, c)));
                    }
                } else {
                    let direct = to_x.clone();
                    let want = -path_charge(h, &direct) * path_charge(h, &to_y);
                    table.put(h, direct);
                    table.put(h, concat(&to_y, &table.oriented(y, x, want)));
                }
            }
            for t in s + 1..r {
                table.put(h, p[s..=t].to_vec());
                let around = concat(&concat(&to_x, &table.oriented(x, y, -eps)), &p[t..].iter().rev().copied().collect::<Vec<_>>());
                table.put(h, around);
            }
        }
        for &v in &p[1..r] {
            is_built[v] = true;
        }
    }
    Ok(PositiveBasis::new(h, cycles, Provenance::Ear))
}
