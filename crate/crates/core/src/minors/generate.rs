use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::genericity::{check_condition2_with, GenericityReport};
use super::{principal_minor, Matrix};
use crate::error::{Error, Result};
use crate::graph::ChargedGraph;
use crate::sign::Sign;
use crate::subset;
use crate::tol::Tolerances;

/// Per-step shrink factor of the global rescale.
const SHRINK: f64 = 0.95;

#[derive(Clone, Debug)]
pub enum Topology {
    /// Each pair `i < j` is an edge independently with this probability;
    /// charges are uniform.
    Density(f64),
    /// Fixed edges and charges; edge magnitudes are used when positive and
    /// drawn otherwise.
    Graph(ChargedGraph),
}

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub n: usize,
    pub topology: Topology,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub seed: u64,
    pub max_attempts: usize,
}

impl GeneratorConfig {
    pub fn with_density(n: usize, density: f64, alpha: f64, beta: f64, gamma: f64, seed: u64) -> Self {
        GeneratorConfig {
            n,
            topology: Topology::Density(density),
            alpha,
            beta,
            gamma,
            seed,
            max_attempts: 500,
        }
    }

    pub fn with_graph(graph: ChargedGraph, alpha: f64, beta: f64, gamma: f64, seed: u64) -> Self {
        GeneratorConfig {
            n: graph.n(),
            topology: Topology::Graph(graph),
            alpha,
            beta,
            gamma,
            seed,
            max_attempts: 500,
        }
    }
}

/// The `(alpha, beta, gamma)` triple of a class `K_N(alpha, beta, gamma)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub matrix: Matrix,
    pub graph: ChargedGraph,
    /// Global factor applied to enforce `|Delta_S| <= 1`.
    pub scale: f64,
    /// Constants the output actually satisfies: its measured minimum
    /// magnitude, four-cycle gap and combination floor (each capped at 1;
    /// vacuous ones are 1).
    pub achieved: Constants,
    pub report: GenericityReport,
    pub attempts: usize,
}

/// Draws a random member of `K_n(alpha, beta, gamma)`.
///
/// Off-diagonal magnitudes are uniform on `[alpha, 2 alpha]` with random
/// signs, diagonal entries uniform on `[-alpha, alpha]`. The matrix is then
/// scaled by `c = 0.95^t` (smallest `t`) until every `|Delta_S| <= 1`, and
/// must pass Condition 2 for `(c alpha, c^2 beta, c^4 gamma)`; otherwise it
/// is redrawn, up to `max_attempts` times. With `c = 1` the output is a
/// member for the requested constants.
pub fn random_instance(cfg: &GeneratorConfig) -> Result<GeneratedInstance> {
    let GeneratorConfig { n, alpha, beta, gamma, .. } = *cfg;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside (0, 1]")));
        }
    }
    match &cfg.topology {
        Topology::Density(d) if !(0.0..=1.0).contains(d) => {
            return Err(Error::InvalidParameter(format!("density {d} outside [0, 1]")));
        }
        Topology::Graph(g) if g.n() != n => return Err(Error::DimensionMismatch(g.n(), n)),
        _ => {}
    }
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last = String::new();
    for attempt in 1..=cfg.max_attempts {
        let k = draw(cfg, &mut rng);
        let scale = bound_scale(&k)?;
        let k = if scale < 1.0 { k.scaled(scale) } else { k };
        let (a, b, g) = (alpha * scale, beta * scale.powi(2), gamma * scale.powi(4));
        let report = check_condition2_with(&k, a, b, g, &tol)?;
        if report.condition2_ok {
            let m = report.margins;
            let achieved = Constants {
                alpha: m.magnitude.unwrap_or(1.0).min(1.0),
                beta: m.gap.unwrap_or(1.0).min(1.0),
                gamma: m.combination.unwrap_or(1.0).min(1.0),
            };
            return Ok(GeneratedInstance {
                graph: k.sparsity_graph(tol.zero),
                matrix: k,
                scale,
                achieved,
                report,
                attempts: attempt,
            });
        }
        last = match report.witnesses.first() {
            Some(w) => format!("{:?} violated (value {:e})", w.clause, w.value),
            None => "condition 2 failed".into(),
        };
    }
    Err(Error::Infeasible {
        attempts: cfg.max_attempts,
        reason: last,
    })
}

fn draw(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Matrix {
    let n = cfg.n;
    let alpha = cfg.alpha;
    let mut k = Matrix::zeros(n);
    for i in 0..n {
        k[(i, i)] = rng.gen_range(-alpha..=alpha);
    }
    let put = |k: &mut Matrix, rng: &mut ChaCha8Rng, i: usize, j: usize, charge: Sign, mag: f64| {
        let mag = if mag > 0.0 { mag } else { rng.gen_range(alpha..=2.0 * alpha) };
        let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        k[(i, j)] = s * mag;
        k[(j, i)] = charge.to_f64() * s * mag;
    };
    match &cfg.topology {
        Topology::Density(d) => {
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(*d) {
                        let charge = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                        put(&mut k, rng, i, j, charge, 0.0);
                    }
                }
            }
        }
        Topology::Graph(g) => {
            for e in 0..g.m() {
                let (i, j) = g.edge(e);
                put(&mut k, rng, i, j, g.charge(e), g.magnitude(e));
            }
        }
    }
    k
}

/// Largest `c = 0.95^t <= 1` with `c^|S| |Delta_S| <= 1` over all subsets
/// (all orders `<= 2` plus a sample when `n > 12`).
fn bound_scale(k: &Matrix) -> Result<f64> {
    let n = k.n();
    let mut by_order = vec![0.0f64; n + 1];
    let mut see = |s: &[usize]| -> Result<()> {
        let v = principal_minor(k, s)?.abs();
        by_order[s.len()] = by_order[s.len()].max(v);
        Ok(())
    };
    if n <= 12 {
        for s in subset::all_subsets(n).skip(1) {
            see(&s)?;
        }
    } else {
        for i in 0..n {
            see(&[i])?;
            for j in i + 1..n {
                see(&[i, j])?;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..4096 {
            let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            see(&s)?;
        }
    }
    let fits = |c: f64| by_order.iter().enumerate().all(|(o, &m)| m * c.powi(o as i32) <= 1.0);
    let mut c = 1.0;
    while !fits(c) {
        c *= SHRINK;
    }
    Ok(c)
}
