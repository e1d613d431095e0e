use super::SignTable;
use crate::error::{Error, Result};
use crate::graph::{cycle_from_vertex_order, ChargedGraph, CycleSubgraph};
use crate::minors::MinorOracle;
use crate::sign::Sign;
use crate::subset;
use crate::tol::Tolerances;

/// What to do when a noisy-mode decision quantity is exactly zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroPolicy {
    #[default]
    Abort,
    PreferPositive,
}

/// Everything the sign computations of one block need: the oracle, the
/// global charged graph with magnitudes, and how to treat near-zero
/// decision quantities.
pub struct SignContext<'a> {
    pub oracle: &'a dyn MinorOracle,
    pub graph: &'a ChargedGraph,
    pub tol: Tolerances,
    /// `None`: exact mode, small quantities are genericity failures.
    /// `Some(policy)`: noisy mode, small quantities only warn.
    pub lenient: Option<ZeroPolicy>,
    pub warnings: Vec<String>,
}

impl<'a> SignContext<'a> {
    pub fn exact(oracle: &'a dyn MinorOracle, graph: &'a ChargedGraph, tol: Tolerances) -> Self {
        SignContext {
            oracle,
            graph,
            tol,
            lenient: None,
            warnings: Vec::new(),
        }
    }

    fn q(&self, s: &[usize]) -> Result<f64> {
        self.oracle.query(s)
    }

    fn q_without(&self, s: &[usize], drop: &[usize]) -> Result<f64> {
        let rest: Vec<usize> = s.iter().copied().filter(|v| !drop.contains(v)).collect();
        self.q(&rest)
    }

    fn mag(&self, a: usize, b: usize) -> Result<f64> {
        let e = self.edge(a, b)?;
        Ok(self.graph.magnitude(e))
    }

    fn edge(&self, a: usize, b: usize) -> Result<usize> {
        self.graph
            .edge_index(a, b)
            .ok_or_else(|| Error::Graph(format!("no edge {{{}, {}}}", a + 1, b + 1)))
    }

    fn eps(&self, a: usize, b: usize) -> Result<Sign> {
        Ok(self.graph.charge(self.edge(a, b)?))
    }

    /// Sign of `q`, where `scale` is the size `q` is expected to have.
    pub(crate) fn decide(&mut self, q: f64, scale: f64, site: &str) -> Result<Sign> {
        if q.abs() > self.tol.sign * scale {
            return Ok(Sign::of(q));
        }
        let detail = format!("|{q:e}| <= {:e} * {scale:e}", self.tol.sign);
        match self.lenient {
            None => Err(Error::Genericity {
                site: site.to_string(),
                detail,
            }),
            Some(policy) => {
                self.warnings.push(format!("{site}: {detail}"));
                if q == 0.0 {
                    match policy {
                        ZeroPolicy::Abort => Err(Error::AmbiguousSign { site: site.to_string() }),
                        ZeroPolicy::PreferPositive => Ok(Sign::Plus),
                    }
                } else {
                    Ok(Sign::of(q))
                }
            }
        }
    }

    fn site(&self, order: &[usize]) -> String {
        subset::key(&{
            let mut s = order.to_vec();
            s.sort_unstable();
            s
        })
    }
}

/// Product of `eps` over the edges of the closed walk `order` that go from
/// a larger to a smaller vertex: converts the sign of the directed product
/// `K_(o1,o2) ... K_(ok,o1)` into `s(C)` and back.
pub fn orientation_factor(g: &ChargedGraph, order: &[usize]) -> Result<Sign> {
    let k = order.len();
    let mut f = Sign::Plus;
    for t in 0..k {
        let (a, b) = (order[t], order[(t + 1) % k]);
        if a > b {
            let e = g
                .edge_index(a, b)
                .ok_or_else(|| Error::Graph(format!("no edge {{{}, {}}}", a + 1, b + 1)))?;
            f *= g.charge(e);
        }
    }
    Ok(f)
}

/// The directed product `K_ij K_jk K_ki` from minors of order at most three.
pub fn three_cycle_product(oracle: &dyn MinorOracle, i: usize, j: usize, k: usize) -> Result<f64> {
    let (di, dj, dk) = (oracle.query(&[i])?, oracle.query(&[j])?, oracle.query(&[k])?);
    let (dij, dik, djk) = (oracle.query(&[i, j])?, oracle.query(&[i, k])?, oracle.query(&[j, k])?);
    let dijk = oracle.query(&[i, j, k])?;
    Ok(di * dj * dk - 0.5 * (di * djk + dj * dik + dk * dij) + 0.5 * dijk)
}

/// `s(C)` for the positive triangle on `{i, j, k}`.
pub fn sign_three_cycle(ctx: &mut SignContext, i: usize, j: usize, k: usize) -> Result<Sign> {
    let mut v = [i, j, k];
    v.sort_unstable();
    let [i, j, k] = v;
    let charge = ctx.eps(i, j)? * ctx.eps(j, k)? * ctx.eps(i, k)?;
    if !charge.is_plus() {
        return Err(Error::Precondition(format!("triangle {} is negative", ctx.site(&v))));
    }
    let d = three_cycle_product(ctx.oracle, i, j, k)?;
    let scale = ctx.mag(i, j)? * ctx.mag(j, k)? * ctx.mag(i, k)?;
    let site = format!("triangle {}", ctx.site(&v));
    Ok(ctx.decide(d, scale, &site)? * orientation_factor(ctx.graph, &v)?)
}

/// The part of `Delta_S`, `|S| = 4`, contributed by permutations with a
/// four-cycle: `Delta_S` minus its expansion in minors of order at most three.
pub fn four_cycle_z(oracle: &dyn MinorOracle, s: [usize; 4]) -> Result<f64> {
    let d1: Vec<f64> = s.iter().map(|&v| oracle.query(&[v])).collect::<Result<_>>()?;
    let d2 = |a: usize, b: usize| oracle.query(&[s[a], s[b]]);
    let d3 = |skip: usize| {
        let t: Vec<usize> = (0..4).filter(|&x| x != skip).map(|x| s[x]).collect();
        oracle.query(&t)
    };
    let pairs = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
    let mut expansion = 6.0 * d1.iter().product::<f64>();
    for (a, b, c, d) in pairs {
        let (dab, dcd) = (d2(a, b)?, d2(c, d)?);
        expansion += dab * dcd;
        expansion -= 2.0 * (d1[a] * d1[b] * dcd + d1[c] * d1[d] * dab);
    }
    for x in 0..4 {
        expansion += d1[x] * d3(x)?;
    }
    Ok(oracle.query(&s)? - expansion)
}

/// Signs `s(C)` of the positive four-cycles of `G[S]`, in the order
/// `(i j k l)`, `(i j l k)`, `(i k j l)` for `S = {i < j < k < l}`.
pub fn sign_four_cycles(ctx: &mut SignContext, s: [usize; 4]) -> Result<Vec<(CycleSubgraph, Sign)>> {
    let mut s = s;
    s.sort_unstable();
    let [i, j, k, l] = s;
    let g = ctx.graph;
    let orders = [[i, j, k, l], [i, j, l, k], [i, k, j, l]];
    let mut present = Vec::new();
    for o in orders {
        if let Ok(c) = cycle_from_vertex_order(g, &o) {
            if c.charge(g).is_plus() {
                let m: f64 = (0..4).map(|t| ctx.mag(o[t], o[(t + 1) % 4])).product::<Result<f64>>()?;
                present.push((o, c, m));
            }
        }
    }
    if present.is_empty() {
        return Ok(Vec::new());
    }
    let z = four_cycle_z(ctx.oracle, s)?;
    let site = format!("four-cycle set {}", ctx.site(&s));
    let mut out = Vec::with_capacity(present.len());
    if present.len() == 1 {
        let (o, c, m) = present.pop().unwrap();
        let sd = ctx.decide(-z, 2.0 * m, &site)?;
        out.push((c, sd * orientation_factor(g, &o)?));
        return Ok(out);
    }
    if present.len() != 3 {
        return Err(Error::Invariant(format!("{site}: exactly two positive four-cycles")));
    }
    // phi minimizing |Z/2 + sum phi_t |P_t||, lexicographic on ties
    let mut scored: Vec<([Sign; 3], f64)> = Vec::with_capacity(8);
    for mask in 0..8u32 {
        let phi = [0, 1, 2].map(|t| if mask & (4 >> t) != 0 { Sign::Plus } else { Sign::Minus });
        let r = (z / 2.0 + (0..3).map(|t| phi[t].to_f64() * present[t].2).sum::<f64>()).abs();
        scored.push((phi, r));
    }
    let best = scored
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then(a.0.cmp(&b.0)))
        .map(|(t, _)| t)
        .unwrap();
    let second = scored
        .iter()
        .enumerate()
        .filter(|&(t, _)| t != best)
        .map(|(_, x)| x.1)
        .fold(f64::INFINITY, f64::min);
    let scale = present.iter().map(|p| p.2).fold(0.0, f64::max);
    ctx.decide(second - scored[best].1, scale, &format!("{site} (phi gap)"))?;
    let phi = scored[best].0;
    for (t, (o, c, _)) in present.into_iter().enumerate() {
        out.push((c, phi[t] * orientation_factor(g, &o)?));
    }
    Ok(out)
}

/// `Z` of a long cycle in span order `i_1 .. i_k` (`k >= 5`): `Delta_S`
/// minus the terms expressible through minors of `S` with some of
/// `i_1, i_2, i_(k-1), i_k` removed and through order-two data.
///
/// The four-cycle `i_1 i_(k-1) i_k i_2`, when both of its chords exist,
/// takes its sign from `table`.
pub fn z_value(ctx: &mut SignContext, order: &[usize], table: &SignTable) -> Result<f64> {
    let k = order.len();
    if k < 5 {
        return Err(Error::Precondition("z_value needs a cycle of length at least five".into()));
    }
    let g = ctx.graph;
    let (a1, a2, b1, bk) = (order[0], order[1], order[k - 2], order[k - 1]);
    let s: Vec<usize> = order.to_vec();
    let d = |v: usize| ctx.q(&[v]);
    let d2 = |a: usize, b: usize| ctx.q(&[a, b]);
    let (d_a1, d_a2, d_b1, d_bk) = (d(a1)?, d(a2)?, d(b1)?, d(bk)?);
    let inner = ctx.q_without(&s, &[a1, a2, b1, bk])?;
    let q = if g.has_edge(a1, b1) && g.has_edge(a2, bk) {
        let w = [a1, b1, bk, a2];
        let c = cycle_from_vertex_order(g, &w)?;
        let sw = table.require(g, &c, "crossed-chord four-cycle at the spanning edge")?;
        let sd = sw * orientation_factor(g, &w)?;
        let m = ctx.mag(a1, b1)? * ctx.mag(b1, bk)? * ctx.mag(bk, a2)? * ctx.mag(a2, a1)?;
        sd.to_f64() * m
    } else {
        0.0
    };
    let p12 = d2(a1, a2)? - d_a1 * d_a2;
    let pk = d2(b1, bk)? - d_b1 * d_bk;
    let z = ctx.q(&s)?
        - d_a1 * ctx.q_without(&s, &[a1])?
        - d_bk * ctx.q_without(&s, &[bk])?
        - (d2(a1, bk)? - 2.0 * d_a1 * d_bk) * ctx.q_without(&s, &[a1, bk])?
        + 2.0 * q * inner
        - (d2(a1, b1)? - d_a1 * d_b1) * (d2(a2, bk)? - d_a2 * d_bk) * inner
        - p12 * (ctx.q_without(&s, &[a1, a2])? - d_bk * ctx.q_without(&s, &[a1, a2, bk])?)
        - pk * (ctx.q_without(&s, &[b1, bk])? - d_a1 * ctx.q_without(&s, &[a1, b1, bk])?)
        + p12 * pk * inner;
    Ok(z)
}

/// `s(C)` of a long cycle in span order from its `Z`, using the crossed
/// pairs `(a, b)` (0-based positions; chords `{i_a, i_(b-1)}`,
/// `{i_(a+1), i_b}`) and their four-cycle signs from `table`.
pub fn sign_long_cycle(
    ctx: &mut SignContext,
    z: f64,
    order: &[usize],
    crossings: &[(usize, usize)],
    table: &SignTable,
) -> Result<Sign> {
    let k = order.len();
    let g = ctx.graph;
    let mut brackets = Sign::Plus;
    let mut scale: f64 = 2.0;
    for t in 0..k {
        scale *= ctx.mag(order[t], order[(t + 1) % k])?;
    }
    let site = format!("cycle {}", ctx.site(order));
    for &(a, b) in crossings {
        let (va, va1, vb1, vb) = (order[a], order[a + 1], order[b - 1], order[b]);
        let rails = ctx.mag(va, va1)? * ctx.mag(vb1, vb)?;
        let chords = ctx.mag(vb1, va)? * ctx.mag(va1, vb)?;
        let gap = ctx.decide(rails - chords, rails.max(chords), &format!("{site} crossing ({}, {})", a + 1, b + 1))?;
        scale *= (1.0 - chords / rails).abs();
        if gap.is_plus() {
            continue;
        }
        let w = [va, va1, vb, vb1];
        let c = cycle_from_vertex_order(g, &w)?;
        let sw = table.require(g, &c, "crossed-chord four-cycle")?;
        let dw = sw * orientation_factor(g, &w)?;
        brackets *= -(ctx.eps(va, va1)? * ctx.eps(vb1, vb)? * dw);
    }
    let sz = ctx.decide(z, scale, &site)?;
    let parity = if k % 2 == 0 { Sign::Minus } else { Sign::Plus };
    let sd = parity * sz * brackets;
    Ok(sd * orientation_factor(g, order)?)
}
