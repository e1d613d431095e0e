//! Recovery from minors known only up to an absolute error `delta`, the
//! perturbed oracles used to exercise it, and a pair of matrices showing
//! that the error requirement cannot be relaxed much.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::ChargedGraph;
use crate::minors::{check_condition2, principal_minor, ExactOracle, Matrix, Memo, MinorOracle, OracleMode, OracleStats};
use crate::recovery::{run, Mode, RecoverOptions, RecoveryResult, ZeroPolicy};
use crate::sign::Sign;
use crate::subset;

/// Relative slack allowed on adversarial offsets.
const OFFSET_SLACK: f64 = 1e-12;

/// Assumed instance constants and the error level of the minors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoisyConfig {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// what to do when a consumed quantity is exactly zero
    pub policy: ZeroPolicy,
}

impl NoisyConfig {
    pub fn new(delta: f64, alpha: f64, beta: f64, gamma: f64) -> Result<NoisyConfig> {
        let c = NoisyConfig {
            delta,
            alpha,
            beta,
            gamma,
            policy: ZeroPolicy::default(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.delta) {
            return Err(Error::InvalidParameter(format!("delta = {} outside [0, 1)", self.delta)));
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidParameter(format!("{name} = {v} outside (0, 1]")));
            }
        }
        Ok(())
    }

    /// `alpha min{alpha^(3 phi), beta^(3 phi / 2), gamma} / 100`; the
    /// guarantee holds for `delta` strictly below this.
    pub fn threshold(&self, phi: usize) -> f64 {
        threshold(self.alpha, self.beta, self.gamma, phi)
    }

    /// `3 delta / (2 alpha)`, the guaranteed bound on `rho(K, K')`.
    pub fn rho_bound(&self) -> f64 {
        3.0 * self.delta / (2.0 * self.alpha)
    }
}

/// See [`NoisyConfig::threshold`].
pub fn threshold(alpha: f64, beta: f64, gamma: f64, phi: usize) -> f64 {
    let p = phi as f64;
    alpha * alpha.powf(3.0 * p).min(beta.powf(1.5 * p)).min(gamma) / 100.0
}

/// How a [`PerturbedOracle`] distorts the exact minors.
#[derive(Clone, Debug, PartialEq)]
pub enum NoiseMode {
    /// Independent uniform `[-delta, delta)` noise per subset, a pure
    /// function of `(seed, S)`.
    Random { seed: u64 },
    /// Fixed offsets on the listed (sorted, 0-based) subsets; zero elsewhere.
    Adversarial { offsets: HashMap<Vec<usize>, f64> },
}

/// An oracle returning `Delta_S + e_S` with `|e_S| <= delta`.
///
/// Each subset is perturbed once and memoized. With `clamp`, a value outside
/// `[-1, 1]` is replaced by its sign.
pub struct PerturbedOracle<O: MinorOracle> {
    inner: O,
    delta: f64,
    mode: NoiseMode,
    clamp: bool,
    memo: Memo,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn subset_seed(seed: u64, s: &[usize]) -> u64 {
    s.iter().fold(splitmix(seed), |h, &i| splitmix(h ^ (i as u64 + 1)))
}

impl<O: MinorOracle> PerturbedOracle<O> {
    pub fn new(inner: O, delta: f64, mode: NoiseMode, clamp: bool) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("delta = {delta} must be finite and >= 0")));
        }
        let n = inner.n();
        if let NoiseMode::Adversarial { offsets } = &mode {
            for (s, &o) in offsets {
                if subset::normalize(s, n)? != *s || s.is_empty() {
                    return Err(Error::InvalidParameter(format!("offset key {{{}}} is not a sorted nonempty subset", subset::key(s))));
                }
                if !(o.abs() <= delta * (1.0 + OFFSET_SLACK)) {
                    return Err(Error::InvalidParameter(format!(
                        "offset {o:e} on {{{}}} exceeds delta = {delta:e}",
                        subset::key(s)
                    )));
                }
            }
        }
        Ok(PerturbedOracle {
            inner,
            delta,
            mode,
            clamp,
            memo: Memo::new(),
        })
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    fn offset(&self, s: &[usize]) -> f64 {
        match &self.mode {
            NoiseMode::Random { seed } => {
                if self.delta == 0.0 {
                    return 0.0;
                }
                let mut rng = ChaCha8Rng::seed_from_u64(subset_seed(*seed, s));
                self.delta * (2.0 * rng.gen::<f64>() - 1.0)
            }
            NoiseMode::Adversarial { offsets } => offsets.get(s).copied().unwrap_or(0.0),
        }
    }
}

impl<O: MinorOracle> MinorOracle for PerturbedOracle<O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&self, s: &[usize]) -> Result<f64> {
        let s = subset::normalize(s, self.n())?;
        self.memo.get_or_compute(s, |s| {
            let exact = self.inner.query(s)?;
            if exact.abs() > 1.0 {
                return Err(Error::MinorOutOfRange {
                    subset: subset::key(s),
                    value: exact,
                });
            }
            let v = exact + self.offset(s);
            Ok(if self.clamp && v.abs() > 1.0 { Sign::of(v).to_f64() } else { v })
        })
    }

    fn stats(&self) -> OracleStats {
        self.memo.stats()
    }

    fn mode(&self) -> OracleMode {
        OracleMode::Perturbed { delta: self.delta }
    }
}

/// A clamped perturbed oracle over the exact minors of `k`.
pub fn perturb_oracle(k: Matrix, delta: f64, mode: NoiseMode, clamp: bool) -> Result<PerturbedOracle<ExactOracle>> {
    PerturbedOracle::new(ExactOracle::new(k), delta, mode, clamp)
}

/// Recovery from `delta`-perturbed minors.
///
/// The graph keeps an edge only when `|D_i D_j - D_ij| > 3 delta`; sign
/// decisions too close to zero proceed with a warning, and an exact zero
/// follows `config.policy`. The constants in `config` are taken as given.
pub fn recover_approx(oracle: &dyn MinorOracle, config: &NoisyConfig) -> Result<RecoveryResult> {
    recover_approx_with(oracle, config, &RecoverOptions::default())
}

pub fn recover_approx_with(oracle: &dyn MinorOracle, config: &NoisyConfig, opts: &RecoverOptions) -> Result<RecoveryResult> {
    config.validate()?;
    run(
        oracle,
        opts,
        Mode::Noisy {
            delta: config.delta,
            policy: config.policy,
        },
    )
}

/// Two matrices on the same charged graph, equal in every principal minor of
/// order below `N`, yet far apart in `rho`.
#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pub k: Matrix,
    pub k_hat: Matrix,
    pub graph: ChargedGraph,
    /// Smallest `||K_ij K_kl| - |K_jk K_li||` over four-cycles. Four-cycles
    /// made of two consecutive cycle edges and two chords have equal opposite
    /// products, so this is `0` and is not checked against `alpha^2`.
    pub four_cycle_gap: Option<f64>,
}

/// The `N`-cycle `1 2 ... N 1` with crossing chord pairs `{i, N-i}`,
/// `{i+1, N-i+1}` for `i = 1..N/2-1`. `K` is `alpha` on the cycle and
/// `sqrt(2) alpha` on the chords (symmetric), except `K_{1,N} = -alpha` and
/// `K_{N/2+1,N/2} = -alpha`; the diagonal is zero. `K_hat` negates
/// both entries on `{1, N}`. Both are checked for the entry floor `alpha`, the
/// combination floor `2 alpha^4` and `|Delta_S| <= 1`.
pub fn example_instance(n: usize, alpha: f64) -> Result<ExampleInstance> {
    if n <= 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("N = {n} must be even and greater than 4")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} outside (0, 1]")));
    }
    let mut k = Matrix::zeros(n);
    let mut edges = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        k[(i, j)] = alpha;
        k[(j, i)] = alpha;
    }
    k[(0, n - 1)] = -alpha;
    k[(n / 2, n / 2 - 1)] = -alpha;
    let chord = 2f64.sqrt() * alpha;
    // 1-based {i, N-i} and {i+1, N-i+1}
    for i in 1..n / 2 {
        for (a, b) in [(i, n - i), (i + 1, n - i + 1)] {
            k[(a - 1, b - 1)] = chord;
            k[(b - 1, a - 1)] = chord;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = k[(i, j)] * k[(j, i)];
            if p != 0.0 {
                edges.push((i, j, Sign::of(p), p.abs().sqrt()));
            }
        }
    }
    let graph = ChargedGraph::new(n, edges)?;
    let mut k_hat = k.clone();
    k_hat[(0, n - 1)] = -k[(0, n - 1)];
    k_hat[(n - 1, 0)] = -k[(n - 1, 0)];
    let gamma = (2.0 * alpha.powi(4)).min(1.0);
    let mut four_cycle_gap = None;
    for m in [&k, &k_hat] {
        let rep = check_condition2(m, alpha, alpha * alpha, gamma)?;
        let mg = rep.margins;
        let floor_ok = mg.magnitude.map_or(true, |x| x >= alpha * (1.0 - 1e-9));
        let comb_ok = mg.combination.map_or(true, |x| x >= gamma * (1.0 - 1e-9));
        let bound_ok = rep.max_abs_minor.map_or(true, |x| x <= 1.0 + 1e-12);
        if !(rep.magnitude_symmetric && floor_ok && comb_ok && bound_ok) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} gives a matrix outside the class: {:?}",
                rep.witnesses.first()
            )));
        }
        four_cycle_gap = mg.gap;
    }
    Ok(ExampleInstance {
        k,
        k_hat,
        graph,
        four_cycle_gap,
    })
}

/// The oracle that answers exact minors of `K` except on `[N]`, where it
/// returns the midpoint of `Delta_[N](K)` and `Delta_[N](K_hat)`. It is a
/// valid `delta`-perturbation of both for `delta = 2 alpha^N`.
pub fn midpoint_oracle(ex: &ExampleInstance, alpha: f64) -> Result<PerturbedOracle<ExactOracle>> {
    let n = ex.k.n();
    let full: Vec<usize> = (0..n).collect();
    let a = principal_minor(&ex.k, &full)?;
    let b = principal_minor(&ex.k_hat, &full)?;
    let offsets = HashMap::from([(full, (b - a) / 2.0)]);
    perturb_oracle(ex.k.clone(), 2.0 * alpha.powi(n as i32), NoiseMode::Adversarial { offsets }, true)
}
