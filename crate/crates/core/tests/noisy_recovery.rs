mod common;

use std::collections::HashMap;

use pma_core::equivalence::rho;
use pma_core::graph::{cycle_from_vertex_order, phi as lib_phi};
use pma_core::minors::{principal_minor, random_instance, ExactOracle, GeneratedInstance, GeneratorConfig};
use pma_core::noisy::{
    example_instance, midpoint_oracle, perturb_oracle, recover_approx, NoiseMode, NoisyConfig, PerturbedOracle,
};
use pma_core::recovery::{matrix_cycle_sign, recover, ZeroPolicy};
use pma_core::{Matrix, MinorOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

/// Noise levels below this are lost in `f64` rounding of the minors, so
/// trials need a threshold at least this large.
const DELTA_FLOOR: f64 = 1e-12;
/// Absolute slack for minors that vanish analytically (all minors are
/// bounded by one in magnitude).
const ZERO_MINOR_ATOL: f64 = 1e-14;

fn instances(count: usize, seed0: u64) -> Vec<GeneratedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed0);
    let mut out = Vec::new();
    let mut seed = seed0;
    while out.len() < count {
        seed += 1;
        let n = rng.gen_range(4..=7);
        let d = rng.gen_range(0.3..0.7);
        if let Ok(i) = random_instance(&GeneratorConfig::with_density(n, d, 0.3, 1e-4, 1e-5, seed)) {
            if i.graph.m() > 0 {
                out.push(i);
            }
        }
    }
    out
}

/// Config at half the threshold for the achieved constants.
fn sub_threshold(inst: &GeneratedInstance) -> NoisyConfig {
    let c = inst.achieved;
    let mut cfg = NoisyConfig::new(0.0, c.alpha, c.beta, c.gamma).unwrap();
    cfg.delta = cfg.threshold(lib_phi(&inst.graph).unwrap()) / 2.0;
    cfg
}

#[test]
fn zero_delta_matches_exact() {
    for inst in instances(15, 1) {
        let o = perturb_oracle(inst.matrix.clone(), 0.0, NoiseMode::Random { seed: 4 }, true).unwrap();
        let c = inst.achieved;
        let a = recover_approx(&o, &NoisyConfig::new(0.0, c.alpha, c.beta, c.gamma).unwrap()).unwrap();
        let b = recover(&ExactOracle::new(inst.matrix.clone())).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }
}

#[test]
fn perturbed_oracle_contract() {
    let inst = &instances(1, 2)[0];
    let k = &inst.matrix;
    let n = k.n();
    let delta = 1e-3;
    let o = perturb_oracle(k.clone(), delta, NoiseMode::Random { seed: 9 }, true).unwrap();
    let again = perturb_oracle(k.clone(), delta, NoiseMode::Random { seed: 9 }, true).unwrap();
    let mut moved = 0;
    for s in all_subsets(n).into_iter().filter(|s| !s.is_empty()) {
        let v = o.query(&s).unwrap();
        assert_eq!(v, o.query(&s).unwrap());
        assert_eq!(v, again.query(&s).unwrap());
        let exact = principal_minor(k, &s).unwrap();
        assert!((v - exact).abs() <= delta);
        assert!(v.abs() <= 1.0);
        moved += (v != exact) as usize;
    }
    assert!(moved > 0);
    assert!(perturb_oracle(k.clone(), -1.0, NoiseMode::Random { seed: 0 }, true).is_err());
}

#[test]
fn clamping() {
    let k = Matrix::diagonal(&[1.0, 0.5]);
    let o = perturb_oracle(k.clone(), 0.1, NoiseMode::Adversarial { offsets: HashMap::from([(vec![0], 0.1)]) }, true)
        .unwrap();
    assert_eq!(o.query(&[0]).unwrap(), 1.0);
    let raw = PerturbedOracle::new(ExactOracle::new(k), 0.1, NoiseMode::Adversarial { offsets: HashMap::from([(vec![0], 0.1)]) }, false)
        .unwrap();
    assert!((raw.query(&[0]).unwrap() - 1.1).abs() < 1e-15);
    assert_eq!(raw.query(&[1]).unwrap(), 0.5);
}

#[test]
fn adversarial_offsets_are_checked() {
    let k = Matrix::identity(3).scaled(0.5);
    let big = HashMap::from([(vec![0, 1], 0.2)]);
    assert!(perturb_oracle(k.clone(), 0.1, NoiseMode::Adversarial { offsets: big }, true).is_err());
    let unsorted = HashMap::from([(vec![1, 0], 0.05)]);
    assert!(perturb_oracle(k.clone(), 0.1, NoiseMode::Adversarial { offsets: unsorted }, true).is_err());
    let ok = HashMap::from([(vec![0, 1], -0.1)]);
    let o = perturb_oracle(k, 0.1, NoiseMode::Adversarial { offsets: ok }, true).unwrap();
    assert!((o.query(&[0, 1]).unwrap() - 0.15).abs() < 1e-15);
    assert_eq!(o.query(&[0, 2]).unwrap(), 0.25);
}

#[test]
fn midpoint_offset_is_admissible() {
    let alpha: f64 = 0.25;
    for n in [6, 8] {
        let ex = example_instance(n, alpha).unwrap();
        let o = midpoint_oracle(&ex, alpha).unwrap();
        let delta = 2.0 * alpha.powi(n as i32);
        assert_eq!(o.delta(), delta);
        let full: Vec<usize> = (0..n).collect();
        let v = o.query(&full).unwrap();
        let (a, b) = (leibniz(&ex.k, &full), leibniz(&ex.k_hat, &full));
        assert!((v - a).abs() <= delta * (1.0 + 1e-9));
        assert!((v - b).abs() <= delta * (1.0 + 1e-9));
        assert!(close(v, (a + b) / 2.0, 1e-10, 0.0));
        // below 2 alpha^N the midpoint is out of reach
        let offsets = HashMap::from([(full, (b - a) / 2.0)]);
        assert!(perturb_oracle(ex.k.clone(), 0.9 * delta, NoiseMode::Adversarial { offsets }, true).is_err());
    }
}

#[test]
fn sub_threshold_graph_magnitudes_and_signs() {
    let mut trials = 0;
    for (t, inst) in instances(120, 3).into_iter().enumerate() {
        let cfg = sub_threshold(&inst);
        if cfg.delta < DELTA_FLOOR {
            continue;
        }
        trials += 1;
        let k = &inst.matrix;
        let o = perturb_oracle(k.clone(), cfg.delta, NoiseMode::Random { seed: t as u64 }, true).unwrap();
        let r = recover_approx(&o, &cfg).unwrap();
        let g = graph_of(k);
        assert_eq!(r.graph.edges(), g.edges(), "trial {t}");
        assert_eq!(r.graph.charges(), g.charges(), "trial {t}");
        let kp = &r.matrix;
        for &(i, j) in g.edges() {
            for (a, b) in [(i, j), (j, i)] {
                let err = (kp[(a, b)].abs() - k[(a, b)].abs()).abs();
                assert!(err <= cfg.rho_bound(), "trial {t}: entry ({a},{b}) off by {err:e}");
            }
        }
        for (order, mask) in simple_cycles(&g) {
            if mask_charge(&g, mask).is_plus() {
                let c = cycle_from_vertex_order(&g, &order).unwrap();
                assert_eq!(matrix_cycle_sign(kp, &g, &c), matrix_cycle_sign(k, &g, &c), "trial {t}: cycle {order:?}");
            }
        }
        let d = rho(k, kp).unwrap();
        assert!(d <= cfg.rho_bound(), "trial {t}: rho {d:e} > {:e}", cfg.rho_bound());
    }
    assert!(trials >= 40, "only {trials} trials");
}

#[test]
fn class_constants_n8() {
    let (alpha, beta, gamma) = (0.3, 0.09, 0.02);
    let mut done = 0;
    let mut seed = 0;
    while done < 6 {
        seed += 1;
        let Ok(inst) = random_instance(&GeneratorConfig::with_density(8, 0.6, alpha, beta, gamma, seed)) else {
            continue;
        };
        let k = &inst.matrix;
        assert!(in_class(k, alpha, beta, gamma));
        let mut cfg = NoisyConfig::new(0.0, alpha, beta, gamma).unwrap();
        cfg.delta = cfg.threshold(phi(&graph_of(k))) / 2.0;
        if cfg.delta < DELTA_FLOOR {
            continue;
        }
        let o = perturb_oracle(k.clone(), cfg.delta, NoiseMode::Random { seed }, true).unwrap();
        let r = recover_approx(&o, &cfg).unwrap();
        let d = rho(k, &r.matrix).unwrap();
        assert!(d <= cfg.rho_bound(), "seed {seed}: rho {d:e} > {:e} (delta {:e})", cfg.rho_bound(), cfg.delta);
        done += 1;
    }
}

#[test]
fn midpoint_oracle_defeats_recovery() {
    let alpha: f64 = 0.25;
    for n in [6, 8] {
        let ex = example_instance(n, alpha).unwrap();
        let o = midpoint_oracle(&ex, alpha).unwrap();
        let mut cfg = NoisyConfig::new(o.delta(), alpha, alpha * alpha, 2.0 * alpha.powi(4)).unwrap();
        cfg.policy = ZeroPolicy::PreferPositive;
        let r = recover_approx(&o, &cfg).unwrap();
        let (a, b) = (rho(&ex.k, &r.matrix).unwrap(), rho(&ex.k_hat, &r.matrix).unwrap());
        assert!(a >= alpha || b >= alpha, "n = {n}: rho {a} and {b}");
    }
}

#[test]
fn example_instance_facts() {
    let alpha: f64 = 0.25;
    let ex = example_instance(6, alpha).unwrap();
    let mut agree = 0;
    for s in all_subsets(6) {
        let (a, b) = (leibniz(&ex.k, &s), leibniz(&ex.k_hat, &s));
        if s.len() < 6 {
            assert!(close(a, b, 1e-12, 0.0), "{s:?}: {a} vs {b}");
            agree += 1;
        } else {
            assert!(close((a - b).abs(), 4.0 * alpha.powi(6), 1e-10, 0.0));
        }
    }
    assert_eq!(agree, 63);
    assert!(rho(&ex.k, &ex.k_hat).unwrap() >= alpha);

    let ex = example_instance(8, 0.3).unwrap();
    assert!(first_minor_mismatch(&ex.k, &ex.k_hat, 7, 1e-10, ZERO_MINOR_ATOL).is_none());
    assert_eq!(ex.graph.m(), 8 + 2 * 3);
    let negative: Vec<(usize, usize)> =
        (0..ex.graph.m()).filter(|&e| !ex.graph.charge(e).is_plus()).map(|e| ex.graph.edge(e)).collect();
    assert_eq!(negative, vec![(0, 7), (3, 4)]);
    assert_eq!(ex.four_cycle_gap, Some(0.0));
    let m = scan_margins(&ex.k);
    assert!(m.magnitude.unwrap() >= 0.3 * (1.0 - 1e-12));
    assert!(m.combination.unwrap() >= 2.0 * 0.3f64.powi(4) * (1.0 - 1e-12));
    assert!(m.max_abs_minor <= 1.0);

    for (n, a) in [(5, 0.25), (4, 0.25), (6, 0.0), (6, 1.5)] {
        assert!(example_instance(n, a).is_err(), "N = {n}, alpha = {a}");
    }
}

#[test]
fn noisy_config_checks() {
    assert!(NoisyConfig::new(0.01, 0.3, 0.09, 0.02).is_ok());
    assert!(NoisyConfig::new(-0.01, 0.3, 0.09, 0.02).is_err());
    assert!(NoisyConfig::new(0.01, 0.0, 0.09, 0.02).is_err());
    assert!(NoisyConfig::new(0.01, 0.3, 1.5, 0.02).is_err());
    let c = NoisyConfig::new(0.01, 0.3, 0.09, 0.02).unwrap();
    assert!(close(c.rho_bound(), 0.05, 1e-15, 0.0));
    let want = 0.3 * 0.3f64.powi(9).min(0.09f64.powf(4.5)).min(0.02) / 100.0;
    assert!(close(c.threshold(3), want, 1e-12, 0.0));
}
