use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{principal_minor, Matrix};
use crate::error::{Error, Result};
use crate::subset;
use crate::tol::Tolerances;

const MAX_WITNESSES: usize = 16;
/// Relative slack on the `alpha`, `beta`, `gamma` floors, so that
/// constructions meeting a floor with equality are not rejected by rounding.
const FLOOR_SLACK: f64 = 1e-9;
const EXHAUSTIVE_MINOR_CHECK: usize = 12;
const SAMPLED_MINORS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `|K_ij K_kl| = |K_jk K_li|`
    MagnitudeGap,
    /// a signed combination of the three four-cycle products vanishes
    SignCombination,
    MagnitudeSymmetry,
    AlphaFloor,
    BetaSeparation,
    GammaFloor,
    MinorBound,
}

/// A violated clause, its vertices (0-based) and the offending value.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub clause: Clause,
    pub value: f64,
}

/// Smallest observed values of the quantities the floors constrain.
/// `None` when the quantity ranges over an empty set.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Margins {
    /// min over four-cycle tuples of `||K_ij K_kl| - |K_jk K_li||`
    pub gap: Option<f64>,
    /// min over four-cycle tuples and sign patterns of the combination magnitude
    pub combination: Option<f64>,
    /// min nonzero off-diagonal magnitude
    pub magnitude: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MinorBoundMode {
    NotChecked,
    Exhaustive,
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericityReport {
    pub magnitude_symmetric: bool,
    pub condition1_ok: bool,
    pub condition2_ok: bool,
    pub witnesses: Vec<Witness>,
    pub margins: Margins,
    pub minor_bound_mode: MinorBoundMode,
    /// Largest `|Delta_S|` seen by the minor-bound check.
    pub max_abs_minor: Option<f64>,
}

impl GenericityReport {
    fn witness(&mut self, vertices: Vec<usize>, clause: Clause, value: f64) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { vertices, clause, value });
        }
    }
}

fn min_opt(a: Option<f64>, b: f64) -> Option<f64> {
    Some(a.map_or(b, |a| a.min(b)))
}

pub fn check_condition1(k: &Matrix) -> GenericityReport {
    check_condition1_with(k, &Tolerances::default())
}

/// Scans every ordered 4-tuple `(i,j,k,l)` with `K_ij K_jk K_kl K_li != 0`.
pub fn check_condition1_with(k: &Matrix, tol: &Tolerances) -> GenericityReport {
    let n = k.n();
    let mut rep = GenericityReport {
        magnitude_symmetric: k.is_magnitude_symmetric(1e-12),
        condition1_ok: true,
        condition2_ok: false,
        witnesses: Vec::new(),
        margins: Margins::default(),
        minor_bound_mode: MinorBoundMode::NotChecked,
        max_abs_minor: None,
    };
    if !rep.magnitude_symmetric {
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (k[(i, j)].abs(), k[(j, i)].abs());
                if (a - b).abs() > 1e-12 * a.max(b) {
                    rep.witness(vec![i, j], Clause::MagnitudeSymmetry, a - b);
                }
            }
        }
        rep.condition1_ok = false;
    }
    let edge = |i: usize, j: usize| (k[(i, j)] * k[(j, i)]).abs() >= tol.zero;
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && edge(i, j)).collect()).collect();
    for i in 0..n {
        for &j in &adj[i] {
            rep.margins.magnitude = min_opt(rep.margins.magnitude, k[(i, j)].abs());
        }
    }
    for i in 0..n {
        for &j in &adj[i] {
            for &kk in &adj[j] {
                if kk == i {
                    continue;
                }
                for &l in &adj[kk] {
                    if l == i || l == j || !edge(l, i) {
                        continue;
                    }
                    let e = |a: usize, b: usize| k[(a, b)];
                    let a = (e(i, j) * e(kk, l)).abs();
                    let b = (e(j, kk) * e(l, i)).abs();
                    let gap = (a - b).abs();
                    rep.margins.gap = min_opt(rep.margins.gap, gap);
                    if gap <= tol.zero * a.max(b) {
                        rep.condition1_ok = false;
                        rep.witness(vec![i, j, kk, l], Clause::MagnitudeGap, gap);
                    }
                    let t1 = e(i, j) * e(j, kk) * e(kk, l) * e(l, i);
                    let t2 = e(i, j) * e(j, l) * e(l, kk) * e(kk, i);
                    let t3 = e(i, kk) * e(kk, j) * e(j, l) * e(l, i);
                    let scale = t1.abs() + t2.abs() + t3.abs();
                    for p in 0..8 {
                        let f = |b: usize| if p >> b & 1 == 1 { -1.0 } else { 1.0 };
                        let v = (f(0) * t1 + f(1) * t2 + f(2) * t3).abs();
                        rep.margins.combination = min_opt(rep.margins.combination, v);
                        if v <= tol.zero * scale {
                            rep.condition1_ok = false;
                            rep.witness(vec![i, j, kk, l], Clause::SignCombination, v);
                        }
                    }
                }
            }
        }
    }
    rep
}

pub fn check_condition2(k: &Matrix, alpha: f64, beta: f64, gamma: f64) -> Result<GenericityReport> {
    check_condition2_with(k, alpha, beta, gamma, &Tolerances::default())
}

/// Condition 1 plus the `alpha` floor, `beta` separation, `gamma` floor and
/// the bound `|Delta_S| <= 1` (exhaustive for `n <= 12`, sampled otherwise).
pub fn check_condition2_with(
    k: &Matrix,
    alpha: f64,
    beta: f64,
    gamma: f64,
    tol: &Tolerances,
) -> Result<GenericityReport> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside (0, 1]")));
        }
    }
    let mut rep = check_condition1_with(k, tol);
    let mut ok = rep.condition1_ok;
    let n = k.n();
    for i in 0..n {
        for j in i + 1..n {
            let p = (k[(i, j)] * k[(j, i)]).abs();
            if p >= tol.zero && k[(i, j)].abs() < alpha * (1.0 - FLOOR_SLACK) {
                ok = false;
                rep.witness(vec![i, j], Clause::AlphaFloor, k[(i, j)].abs());
            }
        }
    }
    if let Some(g) = rep.margins.gap {
        if g < beta * (1.0 - FLOOR_SLACK) {
            ok = false;
            rep.witness(Vec::new(), Clause::BetaSeparation, g);
        }
    }
    if let Some(g) = rep.margins.combination {
        if g < gamma * (1.0 - FLOOR_SLACK) {
            ok = false;
            rep.witness(Vec::new(), Clause::GammaFloor, g);
        }
    }
    let (mode, worst) = max_abs_minor(k)?;
    rep.minor_bound_mode = mode;
    rep.max_abs_minor = Some(worst.0);
    if worst.0 > 1.0 + 1e-12 {
        ok = false;
        rep.witness(worst.1, Clause::MinorBound, worst.0);
    }
    rep.condition2_ok = ok;
    Ok(rep)
}

type Worst = (f64, Vec<usize>);

fn max_abs_minor(k: &Matrix) -> Result<(MinorBoundMode, Worst)> {
    let n = k.n();
    let mut worst: Worst = (0.0, Vec::new());
    let mut see = |s: Vec<usize>| -> Result<()> {
        let v = principal_minor(k, &s)?.abs();
        if v > worst.0 {
            worst = (v, s);
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_MINOR_CHECK {
        for s in subset::all_subsets(n).skip(1) {
            see(s)?;
        }
        return Ok((MinorBoundMode::Exhaustive, worst));
    }
    for i in 0..n {
        see(vec![i])?;
        for j in i + 1..n {
            see(vec![i, j])?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..SAMPLED_MINORS {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        see(s)?;
    }
    Ok((MinorBoundMode::Sampled(SAMPLED_MINORS), worst))
}
