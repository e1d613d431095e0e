//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's algorithms; only its data types
//! (`Matrix`, `ChargedGraph`, `Sign`) are used to carry inputs around.
#![allow(dead_code)]

use pma_core::{ChargedGraph, Matrix, Sign};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- minors

/// Determinant of the principal submatrix on `s` (any order) by the
/// Leibniz sum, skipping zero entries.
pub fn leibniz(k: &Matrix, s: &[usize]) -> f64 {
    let m = s.len();
    if m == 0 {
        return 1.0;
    }
    let mut used = vec![false; m];
    let mut perm = vec![0usize; m];
    let mut total = 0.0;
    fn rec(k: &Matrix, s: &[usize], t: usize, used: &mut [bool], perm: &mut [usize], prod: f64, total: &mut f64) {
        let m = s.len();
        if t == m {
            *total += perm_sign(perm) * prod;
            return;
        }
        for c in 0..m {
            if used[c] {
                continue;
            }
            let v = k[(s[t], s[c])];
            if v == 0.0 {
                continue;
            }
            used[c] = true;
            perm[t] = c;
            rec(k, s, t + 1, used, perm, prod * v, total);
            used[c] = false;
        }
    }
    rec(k, s, 0, &mut used, &mut perm, 1.0, &mut total);
    total
}

/// `+1` or `-1` from the inversion count.
pub fn perm_sign(p: &[usize]) -> f64 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(m - 1) {
        for pos in 0..m {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Leibniz terms of `Delta_S`, `S` listed as `order = i_1 .. i_k`, whose
/// permutation sends `i_1 -> i_k` or `i_k -> i_1` but not both.
pub fn brute_z(k: &Matrix, order: &[usize]) -> f64 {
    let m = order.len();
    let mut z = 0.0;
    for p in all_permutations(m) {
        let first = p[0] == m - 1;
        let last = p[m - 1] == 0;
        if first == last {
            continue;
        }
        let prod: f64 = (0..m).map(|t| k[(order[t], order[p[t]])]).product();
        z += perm_sign(&p) * prod;
    }
    z
}

fn eps(k: &Matrix, a: usize, b: usize) -> f64 {
    (k[(a, b)] * k[(b, a)]).signum()
}

/// Product form of `Z` over the crossed-chord pairs found by scanning the
/// matrix for nonzero entries.
pub fn closed_form_z(k: &Matrix, order: &[usize]) -> f64 {
    let m = order.len();
    let adjacent = |p: usize, q: usize| (p + 1) % m == q || (q + 1) % m == p;
    let chord = |p: usize, q: usize| p != q && !adjacent(p, q) && k[(order[p], order[q])] != 0.0;
    let mut z = 2.0 * if m % 2 == 1 { 1.0 } else { -1.0 } * k[(order[m - 1], order[0])];
    for j in 0..m - 1 {
        z *= k[(order[j], order[j + 1])];
    }
    for a in 0..m {
        for b in a + 1..m {
            if chord(a, b - 1) && chord(a + 1, b) {
                let (ia, ia1, ib1, ib) = (order[a], order[a + 1], order[b - 1], order[b]);
                z *= 1.0 - eps(k, ia, ia1) * k[(ib1, ia)] * k[(ia1, ib)] / (k[(ia, ia1)] * k[(ib1, ib)]);
            }
        }
    }
    z
}

/// Right-hand side of the expansion of `Delta_S` through minors with some
/// of `i_1, i_2, i_(k-1), i_k` removed, plus `z`.
pub fn expansion_rhs(k: &Matrix, order: &[usize], z: f64) -> f64 {
    let m = order.len();
    let (v1, v2, vk1, vk) = (order[0], order[1], order[m - 2], order[m - 1]);
    let without = |drop: &[usize]| {
        let rest: Vec<usize> = order.iter().copied().filter(|v| !drop.contains(v)).collect();
        leibniz(k, &rest)
    };
    let d = |v: usize| k[(v, v)];
    let d2 = |a: usize, b: usize| leibniz(k, &[a, b]);
    let inner = without(&[v1, v2, vk1, vk]);
    let p12 = d2(v1, v2) - d(v1) * d(v2);
    let pk = d2(vk1, vk) - d(vk1) * d(vk);
    d(v1) * without(&[v1]) + d(vk) * without(&[vk]) + (d2(v1, vk) - 2.0 * d(v1) * d(vk)) * without(&[v1, vk])
        - 2.0 * k[(v1, vk1)] * k[(vk1, vk)] * k[(vk, v2)] * k[(v2, v1)] * inner
        + (d2(v1, vk1) - d(v1) * d(vk1)) * (d2(v2, vk) - d(v2) * d(vk)) * inner
        + p12 * (without(&[v1, v2]) - d(vk) * without(&[v1, v2, vk]))
        + pk * (without(&[vk1, vk]) - d(v1) * without(&[v1, vk1, vk]))
        - p12 * pk * inner
        + z
}

pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u64 << n).map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect()).collect()
}

pub fn close(a: f64, b: f64, rtol: f64, atol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()) + atol
}

/// First subset (by order, then lexicographic) of order `<= max_order`
/// where the Leibniz minors of `a` and `b` disagree.
pub fn first_minor_mismatch(a: &Matrix, b: &Matrix, max_order: usize, rtol: f64, atol: f64) -> Option<Vec<usize>> {
    let mut subs: Vec<Vec<usize>> = all_subsets(a.n()).into_iter().filter(|s| s.len() <= max_order).collect();
    subs.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    subs.into_iter().find(|s| !close(leibniz(a, s), leibniz(b, s), rtol, atol))
}

/// Smallest values of the quantities the instance-class floors constrain,
/// by direct scan of all ordered four-tuples.
#[derive(Debug, Default)]
pub struct ScanMargins {
    pub magnitude: Option<f64>,
    pub gap: Option<f64>,
    pub combination: Option<f64>,
    pub max_abs_minor: f64,
    pub magnitude_symmetric: bool,
}

pub fn scan_margins(k: &Matrix) -> ScanMargins {
    let n = k.n();
    let mut out = ScanMargins {
        magnitude_symmetric: true,
        ..Default::default()
    };
    let lower = |slot: &mut Option<f64>, v: f64| *slot = Some(slot.map_or(v, |x: f64| x.min(v)));
    for i in 0..n {
        for j in 0..n {
            if i != j && k[(i, j)] != 0.0 {
                lower(&mut out.magnitude, k[(i, j)].abs());
            }
            if k[(i, j)].abs() != k[(j, i)].abs() {
                out.magnitude_symmetric = false;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let vs = [i, j, l, m];
                    if (0..4).any(|a| (a + 1..4).any(|b| vs[a] == vs[b])) {
                        continue;
                    }
                    let p1 = k[(i, j)] * k[(j, l)] * k[(l, m)] * k[(m, i)];
                    if p1 == 0.0 {
                        continue;
                    }
                    lower(&mut out.gap, ((k[(i, j)] * k[(l, m)]).abs() - (k[(j, l)] * k[(m, i)]).abs()).abs());
                    let p2 = k[(i, j)] * k[(j, m)] * k[(m, l)] * k[(l, i)];
                    let p3 = k[(i, l)] * k[(l, j)] * k[(j, m)] * k[(m, i)];
                    for f in 0..8 {
                        let s = |b: usize| if f >> b & 1 == 1 { -1.0 } else { 1.0 };
                        lower(&mut out.combination, (s(0) * p1 + s(1) * p2 + s(2) * p3).abs());
                    }
                }
            }
        }
    }
    out.max_abs_minor = all_subsets(n).iter().map(|s| leibniz(k, s).abs()).fold(0.0, f64::max);
    out
}

/// Membership in the instance class `(alpha, beta, gamma)` by direct scan.
pub fn in_class(k: &Matrix, alpha: f64, beta: f64, gamma: f64) -> bool {
    let m = scan_margins(k);
    m.magnitude_symmetric
        && m.magnitude.map_or(true, |v| v >= alpha)
        && m.gap.map_or(true, |v| v >= beta)
        && m.combination.map_or(true, |v| v >= gamma)
        && m.max_abs_minor <= 1.0
}

// ---------------------------------------------------------------- graphs

/// Simple cycles as `(vertex order, edge mask)`, each listed once.
pub fn simple_cycles(g: &ChargedGraph) -> Vec<(Vec<usize>, u64)> {
    assert!(g.m() <= 64);
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| g.has_edge(v, w)).collect()).collect();
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut on = vec![false; n];
        on[start] = true;
        extend(g, &adj, start, &mut path, &mut on, &mut out);
    }
    out
}

fn extend(g: &ChargedGraph, adj: &[Vec<usize>], start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<(Vec<usize>, u64)>) {
    let last = *path.last().unwrap();
    for &w in &adj[last] {
        if w == start && path.len() >= 3 && path[1] < last {
            out.push((path.clone(), mask_of(g, path)));
        }
        if w > start && !on[w] {
            on[w] = true;
            path.push(w);
            extend(g, adj, start, path, on, out);
            path.pop();
            on[w] = false;
        }
    }
}

fn mask_of(g: &ChargedGraph, order: &[usize]) -> u64 {
    let k = order.len();
    (0..k).fold(0u64, |m, t| m | 1 << g.edge_index(order[t], order[(t + 1) % k]).unwrap())
}

pub fn mask_charge(g: &ChargedGraph, mask: u64) -> Sign {
    (0..g.m()).filter(|e| mask >> e & 1 == 1).map(|e| g.charge(e)).product()
}

pub fn gf2_rank(vs: impl IntoIterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vs {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Edge blocks: two edges share a block when they lie on a common simple
/// cycle. Returns edge masks.
pub fn edge_blocks(g: &ChargedGraph) -> Vec<u64> {
    let m = g.m();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (_, mask) in simple_cycles(g) {
        let es: Vec<usize> = (0..m).filter(|e| mask >> e & 1 == 1).collect();
        for w in es.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: Vec<(usize, u64)> = Vec::new();
    for e in 0..m {
        let r = find(&mut parent, e);
        match groups.iter_mut().find(|(x, _)| *x == r) {
            Some((_, mk)) => *mk |= 1 << e,
            None => groups.push((r, 1 << e)),
        }
    }
    groups.into_iter().map(|(_, mk)| mk).collect()
}

pub fn mask_vertices(g: &ChargedGraph, mask: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.m())
        .filter(|e| mask >> e & 1 == 1)
        .flat_map(|e| [g.edge(e).0, g.edge(e).1])
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Vertex sets of the blocks with at least one cycle.
pub fn cyclic_block_vertices(g: &ChargedGraph) -> Vec<Vec<usize>> {
    edge_blocks(g)
        .into_iter()
        .filter(|mk| mk.count_ones() > 1)
        .map(|mk| mask_vertices(g, mk))
        .collect()
}

/// `(dim C, dim C+)` restricted to the cycles inside `block` (edge mask).
pub fn block_dims(g: &ChargedGraph, block: u64) -> (usize, usize) {
    let cycles: Vec<(Vec<usize>, u64)> = simple_cycles(g).into_iter().filter(|(_, mk)| mk & !block == 0).collect();
    let nu = gf2_rank(cycles.iter().map(|c| c.1));
    let negative = cycles.iter().any(|c| !mask_charge(g, c.1).is_plus());
    (nu, if negative { nu - 1 } else { nu })
}

/// Dimension of the positive cycle space of the whole graph.
pub fn cplus_dim(g: &ChargedGraph) -> usize {
    let cycles = simple_cycles(g);
    let nu = gf2_rank(cycles.iter().map(|c| c.1));
    if cycles.iter().any(|c| !mask_charge(g, c.1).is_plus()) {
        nu - 1
    } else {
        nu
    }
}

/// Greedy shortest-first positive basis of one block:
/// `(number of cycles, longest, total length)`.
pub fn block_min_positive_basis(g: &ChargedGraph, block: u64) -> (usize, usize, usize) {
    let mut cycles: Vec<(Vec<usize>, u64)> = simple_cycles(g)
        .into_iter()
        .filter(|(_, mk)| mk & !block == 0 && mask_charge(g, *mk).is_plus())
        .collect();
    cycles.sort_by_key(|c| c.0.len());
    let mut chosen: Vec<u64> = Vec::new();
    let (mut longest, mut total) = (0, 0);
    for (order, mk) in cycles {
        let before = gf2_rank(chosen.iter().copied());
        chosen.push(mk);
        if gf2_rank(chosen.iter().copied()) > before {
            longest = longest.max(order.len());
            total += order.len();
        } else {
            chosen.pop();
        }
    }
    (chosen.len(), longest, total)
}

/// Simple cycle sparsity: longest cycle of a shortest-first positive basis,
/// maximized over blocks, `2` when no block has a positive cycle.
pub fn ell_plus(g: &ChargedGraph) -> usize {
    edge_blocks(g)
        .into_iter()
        .map(|b| block_min_positive_basis(g, b).1)
        .fold(2, usize::max)
}

/// Max over blocks and pairs of distinct block edges of the shortest simple
/// cycle through both; `2` for acyclic blocks.
pub fn phi(g: &ChargedGraph) -> usize {
    let cycles = simple_cycles(g);
    let mut best = 2;
    for b in edge_blocks(g) {
        let es: Vec<usize> = (0..g.m()).filter(|e| b >> e & 1 == 1).collect();
        for (x, &e) in es.iter().enumerate() {
            for &f in &es[x + 1..] {
                let want = 1u64 << e | 1u64 << f;
                let len = cycles
                    .iter()
                    .filter(|(_, mk)| mk & want == want)
                    .map(|(o, _)| o.len())
                    .min()
                    .expect("two edges of a block lie on a common cycle");
                best = best.max(len);
            }
        }
    }
    best
}

pub fn is_two_connected(g: &ChargedGraph) -> bool {
    let bs = edge_blocks(g);
    g.n() >= 3 && bs.len() == 1 && mask_vertices(g, bs[0]).len() == g.n()
}

/// Checks the three chord properties of a minimal positive basis cycle,
/// read literally with 1-based positions along `order`.
pub fn chord_properties_hold(g: &ChargedGraph, order: &[usize]) -> bool {
    let k = order.len();
    let closing = |a: usize, b: usize| (a + 1) % k == b || (b + 1) % k == a;
    let mut chords = Vec::new();
    for p in 0..k {
        for q in p + 1..k {
            if !closing(p, q) && g.has_edge(order[p], order[q]) {
                chords.push((p + 1, q + 1));
            }
        }
    }
    let ch = |a: usize, b: usize| g.charge(g.edge_index(order[a - 1], order[b - 1]).unwrap());
    // arc from position x to y going up (cyclically), closed by the chord
    let arc = |x: usize, y: usize| {
        let mut s = ch(x, y);
        let mut t = x;
        while t != y {
            let u = t % k + 1;
            s *= ch(t, u);
            t = u;
        }
        s
    };
    for &(p, q) in &chords {
        if arc(p, q).is_plus() || arc(q, p).is_plus() {
            return false;
        }
    }
    for &(k1, k2) in &chords {
        for &(k3, k4) in &chords {
            if k1 < k3 && k3 < k2 && k2 < k4 {
                let ladder = k3 - k1 == 1 && k4 - k2 == 1;
                let wrap = k1 == 1 && k2 - k3 == 1 && k4 == k;
                if !ladder && !wrap {
                    return false;
                }
            }
        }
    }
    let oriented: Vec<(usize, usize)> = chords.iter().flat_map(|&(p, q)| [(p, q), (q, p)]).collect();
    for &(k1, k2) in &oriented {
        for &(k3, k4) in &oriented {
            for &(k5, k6) in &oriented {
                let distinct = [(k1, k2), (k3, k4), (k5, k6)]
                    .iter()
                    .map(|&(a, b)| (a.min(b), a.max(b)))
                    .collect::<std::collections::HashSet<_>>()
                    .len()
                    == 3;
                if !distinct {
                    continue;
                }
                let first = k1 < k2 && k2 <= k3 && k3 < k4 && k4 <= k5 && k5 < k6;
                let second = k6 <= k1 && k1 < k2 && k2 <= k3 && k3 < k4 && k4 <= k5;
                if first || second {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------- random inputs

pub fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> ChargedGraph {
    let mut es = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                es.push((i, j, random_sign(rng), 0.0));
            }
        }
    }
    ChargedGraph::new(n, es).unwrap()
}

/// A Hamiltonian cycle on a shuffled vertex order plus random extra edges.
pub fn random_two_connected(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> ChargedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = std::collections::BTreeSet::new();
    for t in 0..n {
        let (a, b) = (perm[t], perm[(t + 1) % n]);
        pairs.insert((a.min(b), a.max(b)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(extra) {
                pairs.insert((i, j));
            }
        }
    }
    let es = pairs.into_iter().map(|(i, j)| (i, j, random_sign(rng), 0.0)).collect();
    ChargedGraph::new(n, es).unwrap()
}

/// Magnitude-symmetric matrix on `g` with magnitudes in `[lo, hi]`, random
/// entry signs consistent with the charges, diagonal in `[-lo, lo]`.
pub fn random_matrix_on(rng: &mut ChaCha8Rng, g: &ChargedGraph, lo: f64, hi: f64) -> Matrix {
    let n = g.n();
    let mut k = Matrix::zeros(n);
    for i in 0..n {
        k[(i, i)] = rng.gen_range(-lo..=lo);
    }
    for e in 0..g.m() {
        let (i, j) = g.edge(e);
        let v = rng.gen_range(lo..=hi) * random_sign(rng).to_f64();
        k[(i, j)] = v;
        k[(j, i)] = g.charge(e).to_f64() * v;
    }
    k
}

/// Graph of a matrix: nonzero off-diagonal pairs, charge from the product.
pub fn graph_of(k: &Matrix) -> ChargedGraph {
    let n = k.n();
    let mut es = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if k[(i, j)] != 0.0 || k[(j, i)] != 0.0 {
                es.push((i, j, Sign::of(k[(i, j)] * k[(j, i)]), k[(i, j)].abs()));
            }
        }
    }
    ChargedGraph::new(n, es).unwrap()
}

// ---------------------------------------------------------------- equivalence

/// `rho` by enumerating every sign diagonal and every subset of cyclic
/// blocks to transpose.
pub fn flat_rho(k_ref: &Matrix, k2: &Matrix) -> f64 {
    let n = k_ref.n();
    let blocks = cyclic_block_vertices(&graph_of(k_ref));
    let mut best = f64::INFINITY;
    for tmask in 0..1u64 << blocks.len() {
        let mut t = k_ref.clone();
        for (b, vs) in blocks.iter().enumerate() {
            if tmask >> b & 1 == 1 {
                for &i in vs {
                    for &j in vs {
                        if i < j {
                            t[(i, j)] = k_ref[(j, i)];
                            t[(j, i)] = k_ref[(i, j)];
                        }
                    }
                }
            }
        }
        for dmask in 0..1u64 << n {
            let d = |i: usize| if dmask >> i & 1 == 1 { -1.0 } else { 1.0 };
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    worst = worst.max((d(i) * t[(i, j)] * d(j) - k2[(i, j)]).abs());
                }
            }
            best = best.min(worst);
        }
    }
    best
}
